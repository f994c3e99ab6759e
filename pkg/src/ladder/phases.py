"""Phase structure of the pair sequence and convergence diagnostics.

A phase is a maximal run of steps that all modify the same side (u or v).
Its length obeys a floor-of-log-ratio formula; the phase tails give the
synchronised subsequences tu (decreasing to 1), tv (increasing to a) and
tw = a / tv (decreasing to 1).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2

from .certify import gap_approx, value_approx
from .core import BigRatio, Element, Params, ProductClass, phi, product_class
from .powers import PowerProduct, log_interval
from .records import MaxSteps, PairState, StopCriterion, generate_pairs

__all__ = [
    "ConvergenceReport",
    "ExtractedSequences",
    "Phase",
    "RecursionReport",
    "TooShort",
    "convergence_band",
    "convergence_report",
    "extract_sequences",
    "highest_power",
    "lambda_closed_form",
    "phases_to_csv",
    "segment_phases",
    "sequences_to_csv",
    "verify_recursive_form",
]

V_FIRST = "v_first"
U_FIRST = "u_first"


class TooShort(ValueError):
    """The pair prefix does not contain enough complete phases."""


@dataclass(frozen=True)
class Phase:
    eta: int
    head: int
    tail: int
    lam: int
    modifies: str  # "u" or "v"


def _step_kind(s: PairState, t: PairState) -> str:
    return "v" if t.v.p != s.v.p else "u"


def segment_phases(pairs: Sequence[PairState]) -> list[Phase]:
    """Complete phases of a pair prefix; a trailing unfinished run is dropped."""
    if len(pairs) < 2:
        raise TooShort("need at least two pair states")
    kinds = [_step_kind(pairs[k], pairs[k + 1]) for k in range(len(pairs) - 1)]
    phases = []
    head = 0
    for k in range(1, len(kinds) + 1):
        if k == len(kinds):
            break  # the last run may still continue
        if kinds[k] != kinds[head]:
            phases.append(Phase(len(phases) + 1, head, k, k - head, kinds[head]))
            head = k
    if not phases:
        raise TooShort("no complete phase in the prefix")
    return phases


def _log_mid(x: PowerProduct, prec: int) -> gmpy2.mpfr:
    lo, hi = log_interval(x.factors, prec)
    with gmpy2.context(precision=prec):
        return (lo + hi) / 2


def highest_power(base: PowerProduct, bound: PowerProduct) -> int:
    """Largest ``k >= 0`` with ``base**k < bound``; needs ``base > 1``.

    Starts from a log-ratio estimate, then walks to the exact answer.
    """
    one = PowerProduct()
    if not base > one:
        raise ValueError("base must exceed 1")
    if not one < bound:
        raise ValueError("bound must exceed 1")
    widest = max((abs(e).bit_length() for e in (base / bound).factors.values()), default=1)
    prec = 2 * widest + 96
    num = _log_mid(bound, prec)
    den = _log_mid(base, prec)
    k = int(gmpy2.floor(num / den)) if den > 0 else 0
    k = max(k, 0)
    while k > 0 and not base**k < bound:
        k -= 1
    while base ** (k + 1) < bound:
        k += 1
    return k


def lambda_closed_form(u_head: Element, v_head: Element, modifies: str) -> int:
    """Length of the phase opened at ``(u_head, v_head)``.

    v-phase: highest k with ``v * u**k < a``.  u-phase: highest k with
    ``1 < u * (v/a)**k``.  Both are settled by exact comparison.
    """
    a = PowerProduct.of((u_head.params.a, 1))
    u, v = u_head.product(), v_head.product()
    if modifies == "v":
        k = highest_power(u, a / v)
    elif modifies == "u":
        k = highest_power(a / v, u)
    else:
        raise ValueError("modifies must be 'u' or 'v'")
    if k < 1:
        raise ValueError(f"({u_head.label()}, {v_head.label()}) does not open a {modifies}-phase")
    return k


@dataclass(frozen=True)
class ExtractedSequences:
    tu: list[Element]
    tv: list[Element]
    tw: list[BigRatio]
    start_case: str

    def __len__(self) -> int:
        return len(self.tu)


def _w(v: Element) -> BigRatio:
    # a / v = b**p / a**(q - 1)
    return BigRatio(v.params.b, v.p, v.params.a, v.q - 1)


def start_case(params: Params) -> str:
    one = phi(params, 1)
    return V_FIRST if product_class(one, one) is ProductClass.BELOW_A else U_FIRST


def extract_sequences(pairs: Sequence[PairState]) -> ExtractedSequences:
    phases = segment_phases(pairs)
    if len(phases) < 2:
        raise TooShort("need at least two complete phases")
    params = pairs[0].params
    case = start_case(params)
    one = pairs[0].u
    tu, tv = [one], [one]
    for i in range(1, len(phases) // 2 + 1):
        odd, even = phases[2 * i - 2], phases[2 * i - 1]
        if case == V_FIRST:
            tv.append(pairs[odd.tail].v)
            tu.append(pairs[even.tail].u)
        else:
            tu.append(pairs[odd.tail].u)
            tv.append(pairs[even.tail].v)
    return ExtractedSequences(tu, tv, [_w(v) for v in tv], case)


@dataclass(frozen=True)
class RecursionReport:
    matched: bool
    checked: int
    first_mismatch: int | None = None
    detail: str = ""


def _times_power(x: Element, y: Element, k: int, shift: int) -> Element:
    """``x * (y / a**shift)**k`` as an element, trusting it lands in [1, a)."""
    p = x.p + k * y.p
    q = x.q + k * (y.q - shift)
    return Element(p, q - p, x.params)


def verify_recursive_form(seqs: ExtractedSequences) -> RecursionReport:
    """Recompute every term from its predecessor two ways (the tu/tv
    recursion and the tu/tw recursion) and compare with the extraction."""
    if len(seqs) < 2:
        return RecursionReport(True, 0)
    params = seqs.tu[0].params
    a = PowerProduct.of((params.a, 1))
    for i in range(len(seqs) - 1):
        u, v = seqs.tu[i], seqs.tv[i]
        w = seqs.tw[i].product()
        up, vp = u.product(), v.product()
        if seqs.start_case == V_FIRST:
            l1 = highest_power(up, a / vp)
            v1 = _times_power(v, u, l1, 0)
            l2 = highest_power(a / v1.product(), up)
            u1 = _times_power(u, v1, l2, 1)
            # tw form: w' = w / u**m1, u' = u / w'**m2
            m1 = highest_power(up, w)
            w1 = w / up**m1
            m2 = highest_power(w1, up)
            u1w = up / w1**m2
        else:
            l1 = highest_power(a / vp, up)
            u1 = _times_power(u, v, l1, 1)
            l2 = highest_power(u1.product(), a / vp)
            v1 = _times_power(v, u1, l2, 0)
            # tw form: u' = u / w**m1, w' = w / u'**m2
            m1 = highest_power(w, up)
            u1w = up / w**m1
            m2 = highest_power(u1w, w)
            w1 = w / u1w**m2
        if (u1.p, u1.d) != (seqs.tu[i + 1].p, seqs.tu[i + 1].d):
            return RecursionReport(False, i, i + 1, f"tu[{i+1}]: recursion gives p={u1.p}, d={u1.d}")
        if (v1.p, v1.d) != (seqs.tv[i + 1].p, seqs.tv[i + 1].d):
            return RecursionReport(False, i, i + 1, f"tv[{i+1}]: recursion gives p={v1.p}, d={v1.d}")
        if w1 != seqs.tw[i + 1].product() or u1w != seqs.tu[i + 1].product():
            return RecursionReport(False, i, i + 1, f"tw recursion disagrees at {i+1}")
    return RecursionReport(True, len(seqs) - 1)


def _product(x) -> PowerProduct:
    if isinstance(x, PowerProduct):
        return x
    if hasattr(x, "product"):
        return x.product()
    return PowerProduct.from_fraction(Fraction(x))


def convergence_band(samples: Sequence, limit, epsilon) -> int | None:
    """Smallest N such that every sample past index N lies strictly inside
    ``(limit / (1+eps), limit * (1+eps))``; None if the last sample is outside."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    lim = _product(limit)
    widen = PowerProduct.from_fraction(1 + eps)
    lo, hi = lim / widen, lim * widen
    last_out = None
    for i, x in enumerate(samples):
        x = _product(x)
        if not (lo < x < hi):
            last_out = i
    if not samples:
        return None
    if last_out == len(samples) - 1:
        return None
    return 0 if last_out is None else last_out


@dataclass(frozen=True)
class ConvergenceReport:
    final_u_gap: str
    final_v_gap: str
    monotone_ok: bool
    steps: int
    final: PairState = field(repr=False)


def monotone_ok(pairs: Sequence[PairState]) -> bool:
    """u non-increasing, v non-decreasing, exactly one side moving per step."""
    for s, t in zip(pairs, pairs[1:]):
        du = t.u.p != s.u.p
        dv = t.v.p != s.v.p
        if du == dv:
            return False
        if du and not t.u < s.u:
            return False
        if dv and not t.v > s.v:
            return False
    return True


def convergence_report(params: Params, steps: int | None = None, digits: int = 12,
                       limit: StopCriterion | None = None) -> ConvergenceReport:
    if limit is None:
        if steps is None or steps < 1:
            raise ValueError("steps must be >= 1")
        limit = MaxSteps(steps)
    pairs = generate_pairs(params, limit)
    last = pairs[-1]
    return ConvergenceReport(
        final_u_gap=gap_approx(last.u, 1, digits),
        final_v_gap=gap_approx(last.v, params.a, digits, sign=-1),
        monotone_ok=monotone_ok(pairs),
        steps=last.i,
        final=last,
    )


def phases_to_csv(phases: Sequence[Phase], pairs: Sequence[PairState]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eta", "modifies", "head", "tail", "lambda", "u_p", "v_p"])
    for ph in phases:
        h = pairs[ph.head]
        w.writerow([ph.eta, ph.modifies, ph.head, ph.tail, ph.lam, h.u.p, h.v.p])
    return buf.getvalue()


def sequences_to_csv(seqs: ExtractedSequences, digits: int = 10) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "tu_p", "tu_d", "tv_p", "tv_d", "tw_value_approx"])
    for i, (u, v, t) in enumerate(zip(seqs.tu, seqs.tv, seqs.tw)):
        w.writerow([i, u.p, u.d, v.p, v.d, value_approx(t, digits)])
    return buf.getvalue()
