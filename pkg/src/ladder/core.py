"""Elements of F(a, b) = {a**(p + d(p)) / b**p in [1, a)} and the star law.

An element is carried as its exponent pair ``(p, d)``; big integers only
appear transiently inside :mod:`ladder.powers`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .powers import PowerProduct, sign_of_log

__all__ = [
    "Element",
    "NotCoprime",
    "OrderViolation",
    "Params",
    "ParamsError",
    "ParamsMismatch",
    "ProductClass",
    "SignedElement",
    "BigRatio",
    "compare",
    "d_of",
    "phi",
    "phi_signed",
    "product_class",
    "star",
    "star_signed",
    "validate_params",
]


class ParamsError(ValueError):
    """Invalid (a, b) pair."""


class NotCoprime(ParamsError):
    pass


class OrderViolation(ParamsError):
    pass


class ParamsMismatch(ValueError):
    """Operands belong to different F(a, b)."""


@dataclass(frozen=True)
class Params:
    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if not (isinstance(a, int) and isinstance(b, int)):
            raise TypeError("a and b must be integers")
        if a <= 1:
            raise OrderViolation(f"need 1 < a, got a={a}")
        if b <= a:
            raise OrderViolation(f"need a < b, got a={a}, b={b}")
        g = math.gcd(a, b)
        if g != 1:
            raise NotCoprime(f"a={a} and b={b} are not co-prime (gcd={g})")

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def validate_params(a: int, b: int) -> Params:
    return Params(int(a), int(b))


def _sign(params: Params, a_exp: int, b_exp: int) -> int:
    """Sign of ``a**a_exp * b**b_exp - 1``."""
    f = {}
    if a_exp:
        f[params.a] = a_exp
    if b_exp:
        f[params.b] = b_exp
    return sign_of_log(f)


def _estimate_q(params: Params, p: int) -> int:
    if p < 1 << 50:
        return math.ceil(p * math.log(params.b) / math.log(params.a))
    prec = 2 * p.bit_length() + 64
    with gmpy2.context(precision=prec):
        t = mpz(p) * gmpy2.log(mpz(params.b)) / gmpy2.log(mpz(params.a))
        return int(gmpy2.ceil(t))


def d_of(params: Params, p: int) -> int:
    """Exact offset ``d`` with ``a**(p+d-1) < b**p <= a**(p+d)``."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p == 0:
        return 0
    q = max(_estimate_q(params, p), p)
    # the estimate is within one or two of the truth; settle it exactly
    while _sign(params, q, -p) < 0:
        q += 1
    while q > p and _sign(params, q - 1, -p) >= 0:
        q -= 1
    return q - p


@dataclass(frozen=True)
class Element:
    """``a**(p+d) / b**p``; build through :func:`phi` unless ``d`` is known."""

    p: int
    d: int
    params: Params

    @property
    def q(self) -> int:
        return self.p + self.d

    def product(self) -> PowerProduct:
        return PowerProduct.of((self.params.a, self.q), (self.params.b, -self.p))

    def to_fraction(self) -> Fraction:
        return self.product().to_fraction()

    def is_valid(self) -> bool:
        return self.p >= 0 and self.d >= 0 and d_of(self.params, self.p) == self.d

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d}

    def label(self) -> str:
        return f"{self.params.a}^{self.q}/{self.params.b}^{self.p}"

    def __lt__(self, other: "Element") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Element") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Element") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Element") -> bool:
        return compare(self, other) >= 0


def phi(params: Params, p: int) -> Element:
    return Element(p, d_of(params, p), params)


def _same(e1: Element, e2: Element) -> Params:
    if e1.params != e2.params:
        raise ParamsMismatch(f"{e1.params} vs {e2.params}")
    return e1.params


def compare(e1: Element, e2: Element) -> int:
    """-1, 0 or 1 as ``value(e1)`` is below, equal to or above ``value(e2)``."""
    params = _same(e1, e2)
    if e1.p == e2.p and e1.d == e2.d:
        return 0
    return _sign(params, e1.q - e2.q, e2.p - e1.p)


class ProductClass(str, enum.Enum):
    BELOW_A = "below_a"
    AT_LEAST_A = "at_least_a"


def product_class(e1: Element, e2: Element) -> ProductClass:
    """Whether ``value(e1) * value(e2) < a``, decided exactly."""
    params = _same(e1, e2)
    s = _sign(params, e1.q + e2.q - 1, -(e1.p + e2.p))
    return ProductClass.BELOW_A if s < 0 else ProductClass.AT_LEAST_A


def star(e1: Element, e2: Element) -> Element:
    """The monoid law: plain product, divided by a once it reaches a."""
    params = _same(e1, e2)
    d = e1.d + e2.d
    if product_class(e1, e2) is ProductClass.AT_LEAST_A:
        d -= 1
    return Element(e1.p + e2.p, d, params)


@dataclass(frozen=True)
class SignedElement:
    """Group element ``a**e * b**(-z)``; z >= 0 lies in [1, a), z < 0 in (1/a, 1]."""

    z: int
    e: int
    params: Params

    def product(self) -> PowerProduct:
        return PowerProduct.of((self.params.a, self.e), (self.params.b, -self.z))

    def to_fraction(self) -> Fraction:
        return self.product().to_fraction()

    def is_one(self) -> bool:
        return self.z == 0 and self.e == 0


def phi_signed(params: Params, z: int) -> SignedElement:
    if z >= 0:
        return SignedElement(z, z + d_of(params, z), params)
    return SignedElement(z, -(-z + d_of(params, -z)), params)


def _in_range(params: Params, z: int, e: int) -> int:
    """0 if ``a**e / b**z`` sits in its sign's range, else the direction to move e."""
    if z >= 0:
        if _sign(params, e, -z) < 0:
            return 1
        if _sign(params, e - 1, -z) >= 0:
            return -1
        return 0
    if _sign(params, e, -z) > 0:
        return -1
    if _sign(params, e + 1, -z) <= 0:
        return 1
    return 0


def star_signed(s1: SignedElement, s2: SignedElement) -> SignedElement:
    """Group law on the signed extension, computed from the real product.

    The product of the two values is rescaled by powers of a until it lands
    in the range owned by the sign of ``z1 + z2``.
    """
    if s1.params != s2.params:
        raise ParamsMismatch(f"{s1.params} vs {s2.params}")
    params = s1.params
    z = s1.z + s2.z
    e = s1.e + s2.e
    while (step := _in_range(params, z, e)) != 0:
        e += step
    return SignedElement(z, e, params)


@dataclass(frozen=True)
class BigRatio:
    """``num_base**num_exp / den_base**den_exp`` with no membership constraint."""

    num_base: int
    num_exp: int
    den_base: int
    den_exp: int

    def __post_init__(self) -> None:
        if self.num_base < 1 or self.den_base < 1:
            raise ValueError("bases must be >= 1")
        if self.num_exp < 0 or self.den_exp < 0:
            raise ValueError("exponents must be >= 0")

    def product(self) -> PowerProduct:
        return PowerProduct.of((self.num_base, self.num_exp), (self.den_base, -self.den_exp))

    def to_fraction(self) -> Fraction:
        return self.product().to_fraction()

    def label(self) -> str:
        return f"{self.num_base}^{self.num_exp}/{self.den_base}^{self.den_exp}"
