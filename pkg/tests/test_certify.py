from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ladder.certify import format_sig, gap_approx, round_sig, value_approx
from ladder.core import BigRatio, Params, phi, phi_signed
from ladder.powers import PowerProduct


def oracle(x: Fraction, digits: int) -> Decimal:
    # decimal division of exact integers is correctly rounded
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN, Emax=10**6, Emin=-(10**6))
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


@pytest.mark.parametrize("ratio,digits,want", [
    ((2, 12, 3, 7), 9, "1.87288523"),
    ((2, 85, 3, 53), 9, "1.99582809"),
    ((7, 4, 8, 2), 8, "37.515625"),
    ((7, 4, 8, 2), 7, "37.51562"),  # half-even tie at the 7th digit
    ((2, 28, 3, 17), 9, "2.07863650"),
])
def test_value_examples(ratio, digits, want):
    assert value_approx(BigRatio(*ratio), digits) == want


@given(st.integers(0, 3000), st.integers(1, 25))
def test_value_matches_decimal_oracle(p, digits):
    e = phi(Params(2, 3), p)
    got = value_approx(e, digits)
    assert Decimal(got) == oracle(e.to_fraction(), digits)


@given(st.integers(-400, 400), st.integers(1, 20))
def test_signed_value_matches_oracle(z, digits):
    s = phi_signed(Params(3, 5), z)
    assert Decimal(value_approx(s, digits)) == oracle(s.to_fraction(), digits)


@given(st.integers(1, 10**30), st.integers(1, 10**30), st.integers(1, 30))
def test_rationals_match_oracle(n, d, digits):
    x = Fraction(n, d)
    assert Decimal(value_approx(x, digits)) == oracle(x, digits)


@given(st.integers(1, 2000))
def test_gaps_match_oracle(p):
    P = Params(2, 3)
    e = phi(P, p)
    x = e.to_fraction()
    assert Decimal(gap_approx(e, 1, 12)) == oracle(x - 1, 12)
    assert Decimal(gap_approx(e, 2, 12, sign=-1)) == oracle(2 - x, 12)


def test_gap_of_exact_value_is_zero():
    assert gap_approx(PowerProduct.of((2, 3)), 8, 10) == "0"


def test_deep_value_is_stable_across_digits():
    e = phi(Params(2, 3), 10**12)
    long = value_approx(e, 30)
    short = value_approx(e, 10)
    assert Decimal(short) == Context(prec=10, rounding=ROUND_HALF_EVEN).plus(Decimal(long))


@pytest.mark.parametrize("n,e,digits,want", [
    (187288523, 0, 9, "1.87288523"),
    (37515625, 1, 8, "37.515625"),
    (1234, -3, 4, "0.001234"),
    (1234, -7, 4, "1.234e-7"),
    (1234, 4, 4, "1.234e+4"),
    (1234, 3, 4, "1234"),
    (5, 0, 1, "5"),
])
def test_format_sig(n, e, digits, want):
    assert format_sig(n, e, digits) == want


def test_round_sig_carry_and_ties():
    assert round_sig(Fraction(9999, 1000), 3) == (100, 1)
    assert round_sig(Fraction(125, 100), 2) == (12, 0)
    assert round_sig(Fraction(135, 100), 2) == (14, 0)
    with pytest.raises(ValueError):
        round_sig(Fraction(0), 3)


def test_digits_must_be_positive():
    with pytest.raises(ValueError):
        value_approx(Fraction(3, 2), 0)
