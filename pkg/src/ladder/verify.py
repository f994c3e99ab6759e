"""Acceptance suites behind ``ladder verify``.

Each check returns a :class:`Check`; suites group them.  The pytest
acceptance module runs the same checks.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .certify import gap_approx, value_approx
from .core import (
    BigRatio,
    Element,
    Params,
    ProductClass,
    compare,
    d_of,
    phi,
    phi_signed,
    product_class,
    star_signed,
)
from .density import Target, approximate, approximate_positive
from .phases import (
    U_FIRST,
    convergence_band,
    extract_sequences,
    lambda_closed_form,
    monotone_ok,
    segment_phases,
)
from .powers import PowerProduct
from .records import (
    MinPReached,
    equivalence_check,
    generate_pairs,
    iter_pairs,
    scan_records,
    sequence_records,
)
from .table1 import INITIAL_LAMBDAS, QUOTED, TABLE1

TEST_PARAMS = [(2, 3), (3, 5), (5, 7), (7, 8), (2, 5)]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{tag} {self.name} [{self.seconds:.2f}s]{extra}"


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, ok, detail, time.perf_counter() - t0)


def _rows(rows):
    return [(r.kind, r.p, r.d, r.delta_p, r.delta_d) for r in rows]


# --------------------------------------------------------------- table1


def check_table1_scan() -> tuple[bool, str]:
    t0 = time.perf_counter()
    got = _rows(scan_records(Params(2, 3), 32768))
    secs = time.perf_counter() - t0
    if got != TABLE1:
        bad = next((g, w) for g, w in zip(got + [None] * 99, TABLE1 + [None] * 99) if g != w)
        return False, f"first difference got={bad[0]} want={bad[1]}"
    if secs >= 60:
        return False, f"scan took {secs:.1f}s"
    return True, f"{len(got)} rows, scan {secs:.3f}s"


def check_deep_record() -> tuple[bool, str]:
    rows = sequence_records(Params(2, 3), 31867)
    hit = [r for r in rows if r.kind == "max" and r.p == 31867]
    if not hit or hit[0].d != 18642:
        return False, f"max row at p=31867 missing or wrong: {hit}"
    e = Element(31867, 18642, Params(2, 3))
    if (e.q, e.p) != (50509, 31867) or not e.is_valid():
        return False, "2^50509/3^31867 is not phi(31867)"
    return True, "max p=31867 d=18642"


def check_equivalence(max_p: int = 10_000) -> tuple[bool, str]:
    for a, b in TEST_PARAMS:
        rep = equivalence_check(Params(a, b), max_p)
        if not rep.matched:
            return False, f"({a},{b}) diverges at {rep.first_divergence}"
    return True, f"{len(TEST_PARAMS)} parameter sets, max_p={max_p}"


def check_quoted_decimals() -> tuple[bool, str]:
    for (nb, ne, db, de), want in QUOTED:
        digits = len(want.replace(".", "").lstrip("0"))
        got = value_approx(BigRatio(nb, ne, db, de), digits)
        if got != want:
            return False, f"{nb}^{ne}/{db}^{de}: got {got}, want {want}"
    return True, f"{len(QUOTED)} values"


# --------------------------------------------------------------- monoid


def check_d_additivity(n: int = 10_000, bound: int = 5000, seed: int = 20240101) -> tuple[bool, str]:
    rng = random.Random(seed)
    for a, b in [(2, 3), (3, 5), (7, 8)]:
        params = Params(a, b)
        cache: dict[int, int] = {}

        def d(p):
            if p not in cache:
                cache[p] = d_of(params, p)
            return cache[p]

        for _ in range(n):
            p1, p2 = rng.randint(0, bound), rng.randint(0, bound)
            delta = d(p1 + p2) - d(p1) - d(p2)
            cls = product_class(Element(p1, d(p1), params), Element(p2, d(p2), params))
            if delta not in (0, -1) or (delta == -1) != (cls is ProductClass.AT_LEAST_A):
                return False, f"({a},{b}) p1={p1} p2={p2} delta={delta} class={cls.value}"
    return True, f"{n} pairs x 3 parameter sets"


def _float_log(params: Params, p: int, d: int) -> tuple[float, float]:
    t = p * math.log(params.b) / math.log(params.a)
    return (p + d) - t, t * 1e-13 + 1e-13


def check_integer_and_injective(n: int = 10_000) -> tuple[bool, str]:
    for a, b in TEST_PARAMS:
        params = Params(a, b)
        elems = [phi(params, p) for p in range(n + 1)]
        for e in elems:
            is_int = any(e.product() == PowerProduct.of((k, 1)) for k in range(1, a))
            if is_int != (e.p == 0):
                return False, f"({a},{b}) phi({e.p}) integrality wrong"
        # neighbours within float error get an exact comparison
        keyed = sorted((_float_log(params, e.p, e.d), e) for e in elems)
        for i, ((fi, ei), x) in enumerate(keyed):
            for (fj, ej), y in keyed[i + 1:]:
                if fj - fi > ei + ej:
                    break
                if compare(x, y) == 0:
                    return False, f"({a},{b}) phi({x.p}) == phi({y.p})"
    return True, f"p <= {n}, {len(TEST_PARAMS)} parameter sets"


def check_signed_group(bound: int = 1000) -> tuple[bool, str]:
    for a, b in TEST_PARAMS:
        params = Params(a, b)
        for z in range(-bound, bound + 1):
            r = star_signed(phi_signed(params, z), phi_signed(params, -z))
            if not r.is_one():
                return False, f"({a},{b}) z={z} gives {r}"
    return True, f"|z| <= {bound}"


# --------------------------------------------------------------- phases


def _pairs_with_phases(params: Params, n_phases: int):
    pairs = []
    kinds_changes = 0
    for s in iter_pairs(params):
        if len(pairs) >= 2:
            prev_kind = "v" if pairs[-1].v.p != pairs[-2].v.p else "u"
            kind = "v" if s.v.p != pairs[-1].v.p else "u"
            if kind != prev_kind:
                kinds_changes += 1
        pairs.append(s)
        if kinds_changes >= n_phases:
            return pairs


def check_lambda(n_phases: int = 25) -> tuple[bool, str]:
    for a, b in TEST_PARAMS:
        params = Params(a, b)
        pairs = _pairs_with_phases(params, n_phases)
        phases = segment_phases(pairs)[:n_phases]
        if len(phases) < n_phases:
            return False, f"({a},{b}) only {len(phases)} complete phases"
        for ph in phases:
            h = pairs[ph.head]
            lam = lambda_closed_form(h.u, h.v, ph.modifies)
            if lam != ph.lam:
                return False, f"({a},{b}) phase {ph.eta}: closed form {lam}, observed {ph.lam}"
        if (a, b) == (2, 3):
            head = [ph.lam for ph in phases[: len(INITIAL_LAMBDAS)]]
            if head != INITIAL_LAMBDAS:
                return False, f"(2,3) initial lambdas {head}"
    return True, f"{n_phases} phases x {len(TEST_PARAMS)} parameter sets"


def interleaving_ok(seqs) -> str:
    """Empty string when the strict chains hold, else a description."""
    one = PowerProduct()
    tu = [x.product() for x in seqs.tu]
    tv = [x.product() for x in seqs.tv]
    tw = [x.product() for x in seqs.tw]
    for i in range(len(tu) - 1):
        if not tu[i + 1] < tu[i]:
            return f"tu not decreasing at {i}"
        if not tv[i + 1] > tv[i]:
            return f"tv not increasing at {i}"
        if not tw[i + 1] < tw[i]:
            return f"tw not decreasing at {i}"
        if seqs.start_case == U_FIRST:
            chain = [one, tw[i + 1], tu[i + 1], tw[i], tu[i]]
        else:
            chain = [one, tu[i + 1], tw[i + 1], tu[i], tw[i]]
        if not all(x < y for x, y in zip(chain, chain[1:])):
            return f"interleaving fails at {i}"
    return ""


def check_monotone_interleaving(steps: int = 1000) -> tuple[bool, str]:
    from .records import MaxSteps

    for a, b in TEST_PARAMS:
        pairs = generate_pairs(Params(a, b), MaxSteps(steps))
        if not monotone_ok(pairs):
            return False, f"({a},{b}) monotonicity"
        msg = interleaving_ok(extract_sequences(pairs))
        if msg:
            return False, f"({a},{b}) {msg}"
    return True, f"{steps} steps x {len(TEST_PARAMS)} parameter sets"


def check_convergence() -> tuple[bool, str]:
    params = Params(2, 3)
    pairs = generate_pairs(params, MinPReached(15602))
    last = pairs[-1]
    thousandth = Fraction(1, 1000)
    u_ok = last.u.product() < PowerProduct.from_fraction(1 + thousandth)
    v_ok = last.v.product() > PowerProduct.from_fraction(2 - thousandth)
    ug = gap_approx(last.u, 1, 12)
    vg = gap_approx(last.v, 2, 12, sign=-1)
    if not (u_ok and v_ok):
        return False, f"u-1={ug}, 2-v={vg}"
    seqs = extract_sequences(pairs)
    eps = Fraction(1, 100)
    nu = convergence_band(seqs.tu, 1, eps)
    nv = convergence_band(seqs.tv, 2, eps)
    if nu is None or nv is None:
        return False, f"band N: tu={nu}, tv={nv}"
    return True, f"u-1={ug}, 2-v={vg}, band N tu={nu} tv={nv}"


# --------------------------------------------------------------- density


def _trace_sound(trace, target: Fraction) -> str:
    t = PowerProduct.from_fraction(target)
    for j, s in enumerate(trace.sigma):
        if not s.product() < t:
            return f"sigma_{j} not below target"
        if j and not trace.sigma[j - 1] < s:
            return f"sigma_{j} not increasing"
    return ""


def check_density() -> tuple[bool, str]:
    params = Params(2, 3)
    eps = Fraction(1, 10**6)
    tr = approximate(params, Target.of("3/2"), eps)
    if not tr.converged or len(tr.sigma) >= 200:
        return False, f"3/2: converged={tr.converged} steps={len(tr.sigma)}"
    msg = _trace_sound(tr, Fraction(3, 2))
    if msg:
        return False, "3/2: " + msg
    res = approximate_positive(params, Target.of(10), eps)
    if res.k != 3 or res.scaled.value != Fraction(5, 4) or not res.converged:
        return False, f"x=10: k={res.k} scaled={res.scaled} converged={res.converged}"
    msg = _trace_sound(res.trace, Fraction(5, 4))
    if msg:
        return False, "5/4: " + msg
    return True, f"3/2 in {len(tr.sigma)} steps, 5/4 in {len(res.trace.sigma)} steps"


SUITES: dict[str, list[tuple[str, Callable[[], tuple[bool, str]]]]] = {
    "table1": [
        ("C1 reference record table (scan, p <= 32768)", check_table1_scan),
        ("C2 deep record p=31867 via pair sequence", check_deep_record),
        ("C3 scan/sequence equivalence, max_p=10^4", check_equivalence),
        ("C4 quoted decimals", check_quoted_decimals),
    ],
    "monoid": [
        ("C5 d-additivity vs product class", check_d_additivity),
        ("C6 only-integer and injectivity, p <= 10^4", check_integer_and_injective),
        ("C11 signed group inverses, |z| <= 10^3", check_signed_group),
    ],
    "phases": [
        ("C7 lambda closed form vs observed, 25 phases", check_lambda),
        ("C8 monotonicity and interleaving, 10^3 steps", check_monotone_interleaving),
        ("C9 convergence at desk scale", check_convergence),
    ],
    "density": [
        ("C10 density construction", check_density),
    ],
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [_timed(label, fn) for label, fn in SUITES[name]]
