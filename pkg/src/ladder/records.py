"""Minimum/maximum record holders of phi(1), phi(2), ...

Two independent routes: a brute-force scan over p, and the pair sequence
``s_{i+1} = (u, u*v)`` or ``(u*v, v)`` whose distinct terms are exactly
the records.  :func:`equivalence_check` runs both and diffs them.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from . import _kernel
from .certify import value_approx
from .core import (
    Element,
    Params,
    ProductClass,
    compare,
    d_of,
    phi,
    product_class,
    star,
)
from .powers import PowerProduct

__all__ = [
    "EquivalenceReport",
    "GapBelow",
    "MaxSteps",
    "MinPReached",
    "PairState",
    "RecordEntry",
    "equivalence_check",
    "generate_pairs",
    "iter_pairs",
    "next_pair",
    "records_from_pairs",
    "records_to_csv",
    "records_to_json",
    "scan_records",
]

MIN = "min"
MAX = "max"


@dataclass(frozen=True)
class RecordEntry:
    kind: str
    p: int
    d: int
    delta_p: int
    delta_d: int

    def element(self, params: Params) -> Element:
        return Element(self.p, self.d, params)


def _entries(kind: str, chain: Sequence[tuple[int, int]]) -> list[RecordEntry]:
    out = []
    prev = None
    for p, d in chain:
        if prev is None:
            dp, dd = 1, 1  # first row has no predecessor; reference table uses 1, 1
        else:
            dp, dd = p - prev[0], d - prev[1]
        out.append(RecordEntry(kind, p, d, dp, dd))
        prev = (p, d)
    return out


def _merge(mins: list[RecordEntry], maxs: list[RecordEntry]) -> list[RecordEntry]:
    rows = mins + maxs
    rows.sort(key=lambda r: (r.p, 0 if r.kind == MIN else 1))
    return rows


# ---------------------------------------------------------------- scan


def _exact_callbacks(params: Params):
    def exact_d(p):
        return d_of(params, p)

    def exact_less(p1, d1, p2, d2):
        return compare(Element(p1, d1, params), Element(p2, d2, params)) < 0

    return exact_d, exact_less


def _scan_chunk(a: int, b: int, lo: int, hi: int):
    params = Params(a, b)
    return _kernel.scan_chain(a, b, lo, hi, *_exact_callbacks(params))


def _splice(params: Params, chains, kind: str):
    """Fold per-chunk prefix chains into the global record chain."""
    out = list(chains[0])
    for chain in chains[1:]:
        best = Element(*out[-1], params)
        for k, (p, d) in enumerate(chain):
            c = compare(Element(p, d, params), best)
            if (kind == MIN and c < 0) or (kind == MAX and c > 0):
                # chains are monotone, so everything after k beats best too
                out.extend(chain[k:])
                break
    return out


def scan_chains(params: Params, max_p: int, workers: int | None = None):
    """``(mins, maxs)`` as lists of ``(p, d)`` over ``1 <= p <= max_p``."""
    if max_p < 1:
        raise ValueError("max_p must be >= 1")
    if not workers or workers <= 1 or max_p < 4096:
        return _scan_chunk(params.a, params.b, 1, max_p + 1)
    bounds = [1 + (max_p * k) // workers for k in range(workers + 1)]
    bounds[-1] = max_p + 1
    spans = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan_chunk, params.a, params.b, lo, hi) for lo, hi in spans]
        parts = [f.result() for f in futures]
    mins = _splice(params, [m for m, _ in parts], MIN)
    maxs = _splice(params, [x for _, x in parts], MAX)
    return mins, maxs


def scan_records(params: Params, max_p: int, workers: int | None = None) -> list[RecordEntry]:
    """Record rows found by brute force over ``p = 1..max_p``.

    ``workers > 1`` splits the range across processes; the output is
    identical to the sequential scan.
    """
    mins, maxs = scan_chains(params, max_p, workers)
    return _merge(_entries(MIN, mins), _entries(MAX, maxs))


# ---------------------------------------------------------------- pairs


@dataclass(frozen=True)
class PairState:
    i: int
    u: Element
    v: Element

    @property
    def params(self) -> Params:
        return self.u.params

    def max_p(self) -> int:
        return max(self.u.p, self.v.p)

    def to_json(self) -> dict:
        return {"i": self.i, "u": self.u.to_json(), "v": self.v.to_json()}


def initial_pair(params: Params) -> PairState:
    one = phi(params, 1)
    return PairState(0, one, one)


def next_pair(state: PairState) -> PairState:
    u, v = state.u, state.v
    w = star(u, v)
    if product_class(u, v) is ProductClass.BELOW_A:
        return PairState(state.i + 1, u, w)
    return PairState(state.i + 1, w, v)


def iter_pairs(params: Params) -> Iterator[PairState]:
    s = initial_pair(params)
    while True:
        yield s
        s = next_pair(s)


@dataclass(frozen=True)
class MaxSteps:
    n: int


@dataclass(frozen=True)
class MinPReached:
    p: int


@dataclass(frozen=True)
class GapBelow:
    """Stop once ``u - 1 < eps`` and ``a - v < eps`` (exact)."""

    eps: Fraction

    def __post_init__(self) -> None:
        if Fraction(self.eps) <= 0:
            raise ValueError("eps must be positive")


StopCriterion = Union[MaxSteps, MinPReached, GapBelow]


def _done(state: PairState, limit: StopCriterion) -> bool:
    if isinstance(limit, MaxSteps):
        return state.i >= limit.n
    if isinstance(limit, MinPReached):
        return state.max_p() >= limit.p
    if isinstance(limit, GapBelow):
        eps = Fraction(limit.eps)
        a = state.params.a
        u_ok = state.u.product() < PowerProduct.from_fraction(1 + eps)
        if not u_ok:
            return False
        if eps >= a:
            return True
        return state.v.product() > PowerProduct.from_fraction(a - eps)
    raise TypeError(f"unknown stop criterion {limit!r}")


def generate_pairs(params: Params, limit: StopCriterion, max_states: int | None = None) -> list[PairState]:
    """Prefix ``s_0 .. s_n`` of the pair sequence, ending at the first state
    that satisfies ``limit`` (inclusive)."""
    if isinstance(limit, MaxSteps) and limit.n < 0:
        raise ValueError("max_steps must be >= 0")
    out = []
    for s in iter_pairs(params):
        out.append(s)
        if _done(s, limit):
            break
        if max_states is not None and len(out) >= max_states:
            break
    return out


def record_chains_from_pairs(pairs: Sequence[PairState]):
    mins: list[tuple[int, int]] = []
    maxs: list[tuple[int, int]] = []
    for s in pairs:
        if not mins or mins[-1] != (s.u.p, s.u.d):
            mins.append((s.u.p, s.u.d))
        if not maxs or maxs[-1] != (s.v.p, s.v.d):
            maxs.append((s.v.p, s.v.d))
    return mins, maxs


def records_from_pairs(pairs: Sequence[PairState]) -> list[RecordEntry]:
    mins, maxs = record_chains_from_pairs(pairs)
    return _merge(_entries(MIN, mins), _entries(MAX, maxs))


def sequence_records(params: Params, max_p: int) -> list[RecordEntry]:
    """Records with ``p <= max_p`` read off the pair sequence."""
    pairs = generate_pairs(params, MinPReached(max_p))
    return [r for r in records_from_pairs(pairs) if r.p <= max_p]


@dataclass(frozen=True)
class EquivalenceReport:
    matched: bool
    first_divergence: tuple[RecordEntry | None, RecordEntry | None] | None = None
    scan_rows: int = 0
    sequence_rows: int = 0


def _by_kind(rows, kind):
    return [r for r in rows if r.kind == kind]


def equivalence_check(params: Params, max_p: int, workers: int | None = None) -> EquivalenceReport:
    scan = scan_records(params, max_p, workers)
    seq = sequence_records(params, max_p)
    for kind in (MIN, MAX):
        xs, ys = _by_kind(scan, kind), _by_kind(seq, kind)
        for k in range(max(len(xs), len(ys))):
            x = xs[k] if k < len(xs) else None
            y = ys[k] if k < len(ys) else None
            if x != y:
                return EquivalenceReport(False, (x, y), len(scan), len(seq))
    return EquivalenceReport(True, None, len(scan), len(seq))


# ---------------------------------------------------------------- output

FIELDS = ["kind", "p", "d", "delta_p", "delta_d", "value_approx"]


def _row(r: RecordEntry, params: Params, digits: int) -> dict:
    return {
        "kind": r.kind,
        "p": r.p,
        "d": r.d,
        "delta_p": r.delta_p,
        "delta_d": r.delta_d,
        "value_approx": value_approx(r.element(params), digits),
    }


def records_to_csv(rows: Sequence[RecordEntry], params: Params, digits: int = 10) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(_row(r, params, digits))
    return buf.getvalue()


def records_to_json(rows: Sequence[RecordEntry], params: Params, digits: int = 10) -> str:
    return json.dumps([_row(r, params, digits) for r in rows], indent=1) + "\n"


def pairs_to_csv(pairs: Sequence[PairState]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "u_p", "u_d", "v_p", "v_d"])
    for s in pairs:
        w.writerow([s.i, s.u.p, s.u.d, s.v.p, s.v.d])
    return buf.getvalue()


def pairs_to_json(pairs: Sequence[PairState], params: Params) -> str:
    doc = {"a": params.a, "b": params.b, "pairs": [s.to_json() for s in pairs]}
    return json.dumps(doc, indent=1) + "\n"


def pairs_from_json(text: str) -> tuple[Params, list[PairState]]:
    """Inverse of :func:`pairs_to_json`; rejects states that are not in F(a, b)."""
    doc = json.loads(text)
    params = Params(int(doc["a"]), int(doc["b"]))
    out = []
    for item in doc["pairs"]:
        u = Element(int(item["u"]["p"]), int(item["u"]["d"]), params)
        v = Element(int(item["v"]["p"]), int(item["v"]["d"]), params)
        if not (u.is_valid() and v.is_valid()):
            raise ValueError(f"state {item['i']} is not a pair of F{params} elements")
        out.append(PairState(int(item["i"]), u, v))
    return params, out
