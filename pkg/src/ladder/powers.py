"""Exact order relations between products of integer powers.

Every comparison in the package reduces to the sign of
``log(prod(base ** exp))`` for a finite map ``base -> signed exponent``.
The sign is decided in three tiers:

1. a double-precision log sum with a generous error bound,
2. an mpfr log interval with directed rounding at escalating precision,
3. full big-integer evaluation, guarded by a bit-length cap.

Tier 2 settles every non-tie without materialising a single power, which
is what lets exponents in the 10**12 range be compared exactly.  Tier 3
only runs for genuine ties (or near-ties beyond the precision ceiling).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpz

__all__ = [
    "DEFAULT_BIT_CAP",
    "PowerProduct",
    "ResourceLimit",
    "bit_cap",
    "cmp_powers",
    "log_interval",
]

DEFAULT_BIT_CAP = 1 << 26

# relative slack on the double screen; roughly 450 ulps
_FLOAT_REL = 1e-13
_FLOAT_ABS = 1e-290
_MAX_PREC = 1 << 15


class ResourceLimit(ArithmeticError):
    """A power would exceed the configured bit-length cap."""


def bit_cap() -> int:
    """Current cap on materialised power sizes, in bits.

    ``LADDER_BIT_CAP`` overrides the default of 2**26.
    """
    raw = os.environ.get("LADDER_BIT_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_BIT_CAP
    try:
        cap = int(raw, 0)
    except ValueError:
        raise ValueError(f"LADDER_BIT_CAP must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError("LADDER_BIT_CAP must be positive")
    return cap


def _normalize(items: Iterable[tuple[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    for base, exp in items:
        base = int(base)
        exp = int(exp)
        if base < 1:
            raise ValueError(f"bases must be >= 1, got {base}")
        if base == 1 or exp == 0:
            continue
        out[base] = out.get(base, 0) + exp
    return {b: e for b, e in out.items() if e != 0}


def _float_sign(factors: Mapping[int, int]) -> int:
    try:
        terms = [e * math.log(b) for b, e in factors.items()]
    except OverflowError:
        return 0
    total = math.fsum(terms)
    bound = _FLOAT_REL * math.fsum(abs(t) for t in terms) + _FLOAT_ABS
    if total > bound:
        return 1
    if total < -bound:
        return -1
    return 0


def _start_prec(factors: Mapping[int, int]) -> int:
    widest = max(abs(e).bit_length() for e in factors.values())
    return 2 * widest + 96


def log_interval(factors: Mapping[int, int], prec: int) -> tuple[gmpy2.mpfr, gmpy2.mpfr]:
    """Enclosure ``[lo, hi]`` of ``sum(exp * log(base))`` at ``prec`` bits."""
    lows = []
    highs = []
    with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
        log_lo = {b: gmpy2.log(mpz(b)) for b in factors}
    with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
        log_hi = {b: gmpy2.log(mpz(b)) for b in factors}
    with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
        for b, e in factors.items():
            lows.append(mpz(e) * (log_lo[b] if e > 0 else log_hi[b]))
        lo = gmpy2.fsum(lows) if lows else gmpy2.mpfr(0)
    with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
        for b, e in factors.items():
            highs.append(mpz(e) * (log_hi[b] if e > 0 else log_lo[b]))
        hi = gmpy2.fsum(highs) if highs else gmpy2.mpfr(0)
    return lo, hi


def _check_size(base: int, exp: int, cap: int) -> None:
    if exp * math.log2(base) > cap:
        raise ResourceLimit(
            f"{base}^{exp} needs about {exp * math.log2(base):.3g} bits; cap is {cap} "
            "(raise LADDER_BIT_CAP to allow it)"
        )


def _exact_sign(factors: Mapping[int, int]) -> int:
    cap = bit_cap()
    num = mpz(1)
    den = mpz(1)
    for b, e in factors.items():
        _check_size(b, abs(e), cap)
        if e > 0:
            num *= mpz(b) ** e
        else:
            den *= mpz(b) ** (-e)
    return (num > den) - (num < den)


def sign_of_log(factors: Mapping[int, int]) -> int:
    """Sign of ``prod(base ** exp) - 1`` for a normalized factor map."""
    if not factors:
        return 0
    s = _float_sign(factors)
    if s:
        return s
    prec = _start_prec(factors)
    while prec <= _MAX_PREC:
        lo, hi = log_interval(factors, prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2
    return _exact_sign(factors)


def cmp_powers(x: int, xe: int, y: int, ye: int) -> int:
    """Exact ``cmp(x**xe, y**ye)`` for positive bases and signed exponents."""
    return sign_of_log(_normalize([(x, xe), (y, -ye)]))


class PowerProduct:
    """Immutable positive rational ``prod(base ** exp)`` with exact ordering.

    Multiplication and division add exponents, so products of huge powers
    stay cheap; ``<``/``==`` go through the tiered comparison.
    """

    __slots__ = ("_f", "_key")

    def __init__(self, factors: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        self._f = _normalize(items)
        self._key = tuple(sorted(self._f.items()))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "PowerProduct":
        return cls(pairs)

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "PowerProduct":
        x = Fraction(x)
        if x <= 0:
            raise ValueError("only positive rationals are representable")
        return cls([(x.numerator, 1), (x.denominator, -1)])

    @property
    def factors(self) -> dict[int, int]:
        return dict(self._f)

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return PowerProduct(list(self._f.items()) + list(other._f.items()))

    def __truediv__(self, other: "PowerProduct") -> "PowerProduct":
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return PowerProduct(list(self._f.items()) + [(b, -e) for b, e in other._f.items()])

    def __pow__(self, k: int) -> "PowerProduct":
        return PowerProduct([(b, e * k) for b, e in self._f.items()])

    def inverse(self) -> "PowerProduct":
        return PowerProduct([(b, -e) for b, e in self._f.items()])

    def cmp(self, other: "PowerProduct") -> int:
        if self._key == other._key:
            return 0
        return sign_of_log((self / other)._f)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return self.cmp(other) == 0

    # structurally different products can be equal (4 vs 2**2), so no cheap
    # hash is consistent with __eq__
    __hash__ = None  # type: ignore[assignment]

    def __lt__(self, other: "PowerProduct") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "PowerProduct") -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other: "PowerProduct") -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other: "PowerProduct") -> bool:
        return self.cmp(other) >= 0

    def bit_size(self) -> float:
        return sum(abs(e) * math.log2(b) for b, e in self._f.items())

    def to_fraction(self) -> Fraction:
        """Materialise the exact value (subject to the bit cap)."""
        cap = bit_cap()
        num = 1
        den = 1
        for b, e in self._f.items():
            _check_size(b, abs(e), cap)
            if e > 0:
                num *= b**e
            else:
                den *= b ** (-e)
        return Fraction(num, den)

    def log_interval(self, prec: int):
        return log_interval(self._f, prec)

    def __repr__(self) -> str:
        if not self._f:
            return "PowerProduct(1)"
        num = "*".join(f"{b}^{e}" for b, e in self._key if e > 0) or "1"
        den = "*".join(f"{b}^{-e}" for b, e in self._key if e < 0)
        return f"PowerProduct({num}/{den})" if den else f"PowerProduct({num})"
