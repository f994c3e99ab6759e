"""Constructive approximation of rationals by elements of F(a, b).

For a target t in (1, a) the greedy trace starts from the largest
minimum-record value below t and keeps multiplying by the largest one
below ``t / sigma``.  The trace stays strictly below t, so every product
is an ordinary product (never reaches a).  Any positive rational is
first moved into [1, a) by a power of a.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .certify import gap_approx
from .core import Element, Params, ProductClass, d_of, phi, product_class, star
from .powers import PowerProduct
from .records import iter_pairs

__all__ = [
    "ApproxTrace",
    "OutOfRange",
    "ScaledResult",
    "Target",
    "TargetInF",
    "approximate",
    "approximate_positive",
    "membership_test",
    "parse_rational",
]


class OutOfRange(ValueError):
    pass


class TargetInF(ValueError):
    """The target is itself an element; ``p`` says which."""

    def __init__(self, p: int):
        super().__init__(f"target is phi({p}), an element of F")
        self.p = p


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``"NUM/DEN"`` or a decimal literal such as ``"1.5"``."""
    if not isinstance(text, str):
        raise TypeError("rationals are parsed from strings only")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational: {text!r}") from None


@dataclass(frozen=True)
class Target:
    num: int
    den: int

    def __post_init__(self) -> None:
        if self.num <= 0 or self.den <= 0:
            raise ValueError("target must be positive")
        if math.gcd(self.num, self.den) != 1:
            raise ValueError("target must be in lowest terms; use Target.of")

    @classmethod
    def of(cls, x) -> "Target":
        x = parse_rational(x) if isinstance(x, str) else Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def product(self) -> PowerProduct:
        return PowerProduct.from_fraction(self.value)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def _exact_log(n: int, base: int) -> int | None:
    """k with ``base**k == n``, else None."""
    if n == 1:
        return 0
    k = max(round(math.log(n) / math.log(base)), 0)
    for cand in (k - 1, k, k + 1):
        if cand >= 0 and base**cand == n:
            return cand
    return None


def membership_test(params: Params, t: Target) -> int | None:
    """p with ``phi(p) == t``, or None when t is not an element."""
    x = t.value
    if not (1 <= x < params.a):
        raise OutOfRange(f"{t} is outside [1, {params.a})")
    q = _exact_log(t.num, params.a)
    p = _exact_log(t.den, params.b)
    if q is None or p is None:
        return None
    return p if q == p + d_of(params, p) else None


class _UChain:
    """Distinct u-values of the pair sequence, materialised on demand."""

    def __init__(self, params: Params, budget: int):
        self._pairs: Iterator = iter_pairs(params)
        self.terms: list[Element] = []
        self.budget = budget
        self.states = 0

    def _extend(self) -> bool:
        while self.states < self.budget:
            s = next(self._pairs)
            self.states += 1
            if not self.terms or s.u.p != self.terms[-1].p:
                self.terms.append(s.u)
                return True
        return False

    def first_below(self, x: PowerProduct, start: int = 0) -> int | None:
        i = start
        while True:
            while i >= len(self.terms):
                if not self._extend():
                    return None
            if self.terms[i].product() < x:
                return i
            i += 1


@dataclass
class ApproxTrace:
    target: Target
    eps: Fraction
    sigma: list[Element] = field(default_factory=list)
    u_indices: list[int] = field(default_factory=list)
    converged: bool = False
    diagnostics: str = ""

    def gap(self, j: int = -1, digits: int = 10) -> str:
        """Certified decimal of ``t / sigma_j - 1``."""
        return gap_approx(self.target.product() / self.sigma[j].product(), 1, digits)

    @property
    def final_gap_bound(self) -> str:
        return self.gap(-1) if self.sigma else ""

    def steps_json(self, digits: int = 10) -> list[dict]:
        return [
            {"sigma_p": s.p, "sigma_d": s.d, "u_index": i, "gap_approx": self.gap(j, digits)}
            for j, (s, i) in enumerate(zip(self.sigma, self.u_indices))
        ]


def approximate(params: Params, t: Target, eps, max_steps: int = 10_000,
                pair_budget: int = 100_000) -> ApproxTrace:
    """Greedy trace sigma_0 < sigma_1 < ... < t until ``t < sigma * (1 + eps)``.

    Running out of ``max_steps`` products or ``pair_budget`` pair states is
    reported through ``converged=False`` and ``diagnostics``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    x = t.value
    if not (1 <= x < params.a):
        raise OutOfRange(f"{t} is outside (1, {params.a})")
    hit = membership_test(params, t)
    if hit is not None:
        raise TargetInF(hit)
    tp = t.product()
    widen = PowerProduct.from_fraction(1 + eps)
    chain = _UChain(params, pair_budget)
    trace = ApproxTrace(t, eps)

    i = chain.first_below(tp)
    if i is None:
        trace.diagnostics = f"pair budget {pair_budget} exhausted before any u-term fell below the target"
        return trace
    trace.sigma.append(chain.terms[i])
    trace.u_indices.append(i)
    while True:
        sigma = trace.sigma[-1]
        if tp < sigma.product() * widen:
            trace.converged = True
            return trace
        if len(trace.sigma) > max_steps:
            trace.diagnostics = f"step budget {max_steps} exhausted"
            return trace
        # t/sigma only shrinks, so earlier indices can be skipped
        i = chain.first_below(tp / sigma.product(), trace.u_indices[-1])
        if i is None:
            trace.diagnostics = f"pair budget {pair_budget} exhausted"
            return trace
        u = chain.terms[i]
        if product_class(sigma, u) is not ProductClass.BELOW_A:
            raise AssertionError("trace product reached a")
        trace.sigma.append(star(sigma, u))
        trace.u_indices.append(i)


@dataclass
class ScaledResult:
    k: int
    scaled: Target
    trace: ApproxTrace | None = None
    exact_hit: Element | None = None

    @property
    def converged(self) -> bool:
        return self.exact_hit is not None or bool(self.trace and self.trace.converged)


def _coset(params: Params, x: Fraction) -> int:
    """k with ``a**k <= x < a**(k+1)``."""
    k = math.floor((math.log(x.numerator) - math.log(x.denominator)) / math.log(params.a))
    xp = PowerProduct.from_fraction(x)

    def a_pow(n):
        return PowerProduct.of((params.a, n))

    while a_pow(k) > xp:
        k -= 1
    while a_pow(k + 1) <= xp:
        k += 1
    return k


def approximate_positive(params: Params, x: Target, eps, max_steps: int = 10_000,
                         pair_budget: int = 100_000) -> ScaledResult:
    k = _coset(params, x.value)
    scaled = x.value / Fraction(params.a) ** k
    st = Target.of(scaled)
    hit = membership_test(params, st)
    if hit is not None:
        return ScaledResult(k, st, exact_hit=phi(params, hit))
    return ScaledResult(k, st, trace=approximate(params, st, eps, max_steps, pair_budget))


def trace_to_json(trace: ApproxTrace | None, k: int | None = None,
                  exact_hit: Element | None = None, digits: int = 10) -> str:
    doc: dict = {}
    if k is not None:
        doc["k"] = k
    doc["steps"] = trace.steps_json(digits) if trace else []
    doc["converged"] = exact_hit is not None or bool(trace and trace.converged)
    if exact_hit is not None:
        doc["exact_hit"] = exact_hit.to_json()
    if trace and trace.diagnostics:
        doc["diagnostics"] = trace.diagnostics
    return json.dumps(doc, indent=1) + "\n"


def trace_to_csv(trace: ApproxTrace, digits: int = 10) -> str:
    lines = ["j,sigma_p,sigma_d,u_index,gap_approx"]
    for j, row in enumerate(trace.steps_json(digits)):
        lines.append(f"{j},{row['sigma_p']},{row['sigma_d']},{row['u_index']},{row['gap_approx']}")
    return "\n".join(lines) + "\n"
