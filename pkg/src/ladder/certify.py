"""Certified decimal rendering.

A value is enclosed in an mpfr interval (exp of a directed-rounding log
interval), both endpoints are rounded to the requested significant digits,
and the digits are printed only once the two roundings agree.  Precision
doubles until they do; if it never does (an exact decimal tie, say) the
exact rational is rounded instead.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Union

import gmpy2

from .powers import PowerProduct, log_interval

__all__ = ["enclose", "render", "value_approx", "gap_approx", "round_sig", "format_sig"]

Quantity = Union[PowerProduct, Fraction, int]

_ESCALATIONS = 8


def _as_product(x) -> PowerProduct:
    if isinstance(x, PowerProduct):
        return x
    if hasattr(x, "product"):
        return x.product()
    return PowerProduct.from_fraction(Fraction(x))


def enclose(x, prec: int) -> tuple[gmpy2.mpfr, gmpy2.mpfr]:
    """Interval ``[lo, hi]`` containing the value of ``x``."""
    f = _as_product(x).factors
    if not f:
        one = gmpy2.mpfr(1)
        return one, one
    lo, hi = log_interval(f, prec)
    with gmpy2.context(precision=prec, round=gmpy2.RoundDown, emax=gmpy2.get_emax_max(),
                       emin=gmpy2.get_emin_min()):
        vlo = gmpy2.exp(lo)
    with gmpy2.context(precision=prec, round=gmpy2.RoundUp, emax=gmpy2.get_emax_max(),
                       emin=gmpy2.get_emin_min()):
        vhi = gmpy2.exp(hi)
    return vlo, vhi


def _pow10(k: int) -> Fraction:
    return Fraction(10**k) if k >= 0 else Fraction(1, 10 ** (-k))


def round_sig(v: Fraction, digits: int) -> tuple[int, int]:
    """Round ``v > 0`` half-even to ``digits`` significant digits.

    Returns ``(n, e)`` with ``10**(digits-1) <= n < 10**digits`` and
    ``v ~= n * 10**(e - digits + 1)``.
    """
    if v <= 0:
        raise ValueError("round_sig needs a positive value")
    e = math.floor((v.numerator.bit_length() - v.denominator.bit_length()) * math.log10(2))
    while v >= _pow10(e + 1):
        e += 1
    while v < _pow10(e):
        e -= 1
    scaled = v / _pow10(e - digits + 1)
    n = round(scaled)  # Fraction.__round__ is half-even
    if n == 10**digits:
        n //= 10
        e += 1
    return n, e


def format_sig(n: int, e: int, digits: int, negative: bool = False) -> str:
    s = str(n)
    sign = "-" if negative else ""
    if -7 < e < digits:
        if e >= 0:
            head, tail = s[: e + 1], s[e + 1 :]
            return sign + (f"{head}.{tail}" if tail else head)
        return sign + "0." + "0" * (-e - 1) + s
    mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{sign}{mant}e{e:+d}"


def _digits_of(x: Fraction, digits: int):
    if x == 0:
        return None
    n, e = round_sig(abs(x), digits)
    return (x < 0, n, e)


def render(interval: Callable[[int], tuple], exact: Callable[[], Fraction], digits: int,
           start_prec: int = 128) -> str:
    """Digits determined by ``interval(prec)``; ``exact()`` is the last resort."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    prec = max(start_prec, int(digits * 3.33) + 64)
    for _ in range(_ESCALATIONS):
        lo, hi = interval(prec)
        if lo == hi == 0:
            return "0"
        if lo > 0 or hi < 0:
            rlo = _digits_of(Fraction(*lo.as_integer_ratio()), digits)
            rhi = _digits_of(Fraction(*hi.as_integer_ratio()), digits)
            if rlo == rhi:
                neg, n, e = rlo
                return format_sig(n, e, digits, neg)
        prec *= 2
    x = exact()
    if x == 0:
        return "0"
    neg, n, e = _digits_of(x, digits)
    return format_sig(n, e, digits, neg)


def _prec_for(p: PowerProduct, digits: int) -> int:
    widest = max((abs(e).bit_length() for e in p.factors.values()), default=1)
    return 2 * widest + int(digits * 3.33) + 64


def value_approx(x, digits: int = 10) -> str:
    """Certified ``digits``-significant-digit decimal of an exact positive value.

    ``x`` may be an Element, BigRatio, SignedElement, PowerProduct or a
    rational.
    """
    p = _as_product(x)
    return render(lambda prec: enclose(p, prec), p.to_fraction, digits, _prec_for(p, digits))


def gap_approx(x, offset, digits: int = 10, sign: int = 1) -> str:
    """Certified decimal of ``sign * (value(x) - offset)`` for rational ``offset``.

    ``sign=1`` gives ``x - offset`` (e.g. ``u - 1``); ``sign=-1`` gives
    ``offset - x`` (e.g. ``a - v``).  Cancellation is handled by the
    precision escalation.
    """
    p = _as_product(x)
    c = Fraction(offset)

    def interval(prec):
        lo, hi = enclose(p, prec)
        with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
            dlo = (lo - gmpy2.mpq(c)) if sign > 0 else (gmpy2.mpq(c) - hi)
        with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
            dhi = (hi - gmpy2.mpq(c)) if sign > 0 else (gmpy2.mpq(c) - lo)
        return dlo, dhi

    def exact():
        v = p.to_fraction() - c
        return v if sign > 0 else -v

    return render(interval, exact, digits, _prec_for(p, digits))
