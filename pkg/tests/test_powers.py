from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ladder.powers import PowerProduct, ResourceLimit, bit_cap, cmp_powers, sign_of_log

bases = st.integers(min_value=1, max_value=60)
exps = st.integers(min_value=-300, max_value=300)


def _cmp(x, y):
    return (x > y) - (x < y)


@given(bases, exps, bases, exps)
def test_cmp_powers_matches_fractions(x, xe, y, ye):
    assert cmp_powers(x, xe, y, ye) == _cmp(Fraction(x) ** xe, Fraction(y) ** ye)


@given(st.lists(st.tuples(st.integers(2, 30), st.integers(-40, 40)), max_size=5),
       st.lists(st.tuples(st.integers(2, 30), st.integers(-40, 40)), max_size=5))
def test_product_ordering_matches_fractions(f1, f2):
    x, y = PowerProduct(f1), PowerProduct(f2)
    fx, fy = x.to_fraction(), y.to_fraction()
    assert x.cmp(y) == _cmp(fx, fy)
    assert (x == y) == (fx == fy)
    assert (x * y).to_fraction() == fx * fy
    assert (x / y).to_fraction() == fx / fy


def test_structurally_different_equal_values():
    assert PowerProduct.of((4, 3)) == PowerProduct.of((2, 6))
    assert PowerProduct.of((6, 5)) == PowerProduct.of((2, 5), (3, 5))
    assert PowerProduct.of((2, 10), (2, -10)) == PowerProduct()


def test_unhashable():
    with pytest.raises(TypeError):
        hash(PowerProduct.of((2, 1)))


def test_huge_exponents_decided_without_materialising(monkeypatch):
    monkeypatch.setenv("LADDER_BIT_CAP", "64")
    # 2**(10**15) vs 3**(6.3e14): far apart in log, no big ints needed
    assert cmp_powers(2, 10**15, 3, 630_000_000_000_000) == 1
    # near miss: 2**q vs 3**p with q the ceiling of p*log2(3)
    p = 10**12
    assert cmp_powers(2, 1584962500722, 3, p) == 1
    assert cmp_powers(2, 1584962500721, 3, p) == -1


def test_exponents_beyond_float_range(monkeypatch):
    monkeypatch.setenv("LADDER_BIT_CAP", "64")
    big = 10**400
    assert cmp_powers(2, big, 2, big - 1) == 1
    assert cmp_powers(3, big, 2, 2 * big) == -1


def test_tie_needs_exact_tier_and_respects_cap(monkeypatch):
    monkeypatch.setenv("LADDER_BIT_CAP", "100")
    assert cmp_powers(4, 40, 2, 80) == 0
    with pytest.raises(ResourceLimit):
        cmp_powers(4, 4000, 2, 8000)


def test_bit_cap_env(monkeypatch):
    monkeypatch.delenv("LADDER_BIT_CAP", raising=False)
    assert bit_cap() == 1 << 26
    monkeypatch.setenv("LADDER_BIT_CAP", "0x100")
    assert bit_cap() == 256
    monkeypatch.setenv("LADDER_BIT_CAP", "nope")
    with pytest.raises(ValueError):
        bit_cap()


def test_to_fraction_respects_cap(monkeypatch):
    monkeypatch.setenv("LADDER_BIT_CAP", "50")
    with pytest.raises(ResourceLimit):
        PowerProduct.of((3, 100)).to_fraction()


def test_empty_and_unit_bases():
    assert sign_of_log({}) == 0
    assert PowerProduct.of((1, 99), (7, 0)) == PowerProduct()
    with pytest.raises(ValueError):
        PowerProduct.of((0, 1))
    with pytest.raises(ValueError):
        PowerProduct.from_fraction(Fraction(-1, 2))
