from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from conftest import TEST_PARAMS
from ladder.core import Element, Params, phi
from ladder.phases import (
    U_FIRST,
    V_FIRST,
    TooShort,
    convergence_band,
    convergence_report,
    extract_sequences,
    highest_power,
    lambda_closed_form,
    phases_to_csv,
    segment_phases,
    sequences_to_csv,
    start_case,
    verify_recursive_form,
)
from ladder.powers import PowerProduct
from ladder.records import MaxSteps, generate_pairs
from ladder.verify import _pairs_with_phases, interleaving_ok

P23 = Params(2, 3)


def cf_terms(a, b, n):
    """Continued fraction of log(b)/log(a) at a precision far beyond need."""
    out = []
    with gmpy2.context(precision=4000):
        x = gmpy2.log(b) / gmpy2.log(a)
        for _ in range(n):
            t = int(gmpy2.floor(x))
            out.append(t)
            x = 1 / (x - t)
    return out


def expected_lengths(a, b, n):
    cf = cf_terms(a, b, n + 3)
    if start_case(Params(a, b)) == V_FIRST:
        return cf[2 : n + 2]
    return [cf[1] - 1] + cf[2 : n + 1]


def test_lengths_for_2_3():
    pairs = generate_pairs(P23, MaxSteps(40))
    assert [ph.lam for ph in segment_phases(pairs)][:7] == [1, 2, 2, 3, 1, 5, 2]


@pytest.mark.parametrize("a,b", TEST_PARAMS)
def test_lengths_match_continued_fraction(a, b):
    pairs = _pairs_with_phases(Params(a, b), 25)
    got = [ph.lam for ph in segment_phases(pairs)][:25]
    assert got == expected_lengths(a, b, 25)


@pytest.mark.parametrize("a,b", TEST_PARAMS)
def test_closed_form_matches_simulation(a, b):
    params = Params(a, b)
    pairs = _pairs_with_phases(params, 25)
    for ph in segment_phases(pairs):
        h = pairs[ph.head]
        assert lambda_closed_form(h.u, h.v, ph.modifies) == ph.lam


def test_phase_head_tail_algebra():
    # each phase multiplies the moving side by the fixed side lam times
    for ab in TEST_PARAMS:
        params = Params(*ab)
        pairs = _pairs_with_phases(params, 12)
        for ph in segment_phases(pairs):
            h, t = pairs[ph.head], pairs[ph.tail]
            if ph.modifies == "v":
                assert t.u.p == h.u.p and t.v.p == h.v.p + ph.lam * h.u.p
            else:
                assert t.v.p == h.v.p and t.u.p == h.u.p + ph.lam * h.v.p


def test_seven_eight_opens_with_u_phase():
    pairs = generate_pairs(Params(7, 8), MaxSteps(20))
    assert segment_phases(pairs)[0].modifies == "u"
    assert start_case(Params(7, 8)) == U_FIRST


def test_too_short():
    with pytest.raises(TooShort):
        segment_phases(generate_pairs(P23, MaxSteps(0)))
    with pytest.raises(TooShort):
        segment_phases(generate_pairs(P23, MaxSteps(1)))
    # s_0 -> s_1 -> s_2 closes the first phase (lambda 1)
    phases = segment_phases(generate_pairs(P23, MaxSteps(2)))
    assert [(p.modifies, p.lam) for p in phases] == [("v", 1)]


def test_lambda_examples():
    E = lambda p, d: Element(p, d, P23)
    assert lambda_closed_form(E(5, 3), E(2, 2), "v") == 2
    assert lambda_closed_form(phi(P23, 1), phi(P23, 2), "u") == 2
    assert lambda_closed_form(E(41, 24), E(53, 32), "u") == 5
    # (4/3, 16/9) can take no v-step: 16/9 * 4/3 >= 2
    with pytest.raises(ValueError):
        lambda_closed_form(phi(P23, 1), phi(P23, 2), "v")
    with pytest.raises(ValueError):
        lambda_closed_form(phi(P23, 1), phi(P23, 2), "x")


@given(st.integers(2, 50), st.integers(2, 10**6))
def test_highest_power_oracle(base, bound):
    k = highest_power(PowerProduct.of((base, 1)), PowerProduct.of((bound, 1)))
    assert base**k < bound <= base ** (k + 1)


def test_extraction_examples():
    seqs = extract_sequences(generate_pairs(P23, MaxSteps(40)))
    assert seqs.start_case == V_FIRST
    assert (seqs.tv[1].p, seqs.tu[1].p) == (2, 5)
    assert seqs.tu[1].to_fraction() == Fraction(2**8, 3**5)
    assert seqs.tw[1].to_fraction() == Fraction(9, 8)
    assert seqs.tu[0].to_fraction() == seqs.tv[0].to_fraction() == Fraction(4, 3)
    assert seqs.tw[0].to_fraction() == Fraction(3, 2)


@pytest.mark.parametrize("a,b", TEST_PARAMS)
def test_interleaving_and_recursion(a, b):
    params = Params(a, b)
    pairs = _pairs_with_phases(params, 24)
    seqs = extract_sequences(pairs)
    assert len(seqs) >= 12
    assert interleaving_ok(seqs) == ""
    rep = verify_recursive_form(seqs)
    assert rep.matched, rep.detail
    assert rep.checked == len(seqs) - 1


def test_recursion_trivial_input():
    seqs = extract_sequences(generate_pairs(P23, MaxSteps(40)))
    short = type(seqs)(seqs.tu[:1], seqs.tv[:1], seqs.tw[:1], seqs.start_case)
    assert verify_recursive_form(short).matched


def test_recursion_detects_tampering():
    seqs = extract_sequences(generate_pairs(P23, MaxSteps(60)))
    tu = list(seqs.tu)
    tu[3] = seqs.tu[2]
    bad = type(seqs)(tu, seqs.tv, seqs.tw, seqs.start_case)
    assert not verify_recursive_form(bad).matched


def test_convergence_band():
    assert convergence_band([Fraction(3, 2)] * 5, Fraction(3, 2), Fraction(1, 10)) == 0
    seqs = extract_sequences(_pairs_with_phases(P23, 20))
    assert convergence_band(seqs.tu, 1, Fraction(1, 10)) is not None
    assert convergence_band(seqs.tv, 2, Fraction(1, 100)) is not None
    assert convergence_band([2, 1], 2, Fraction(1, 10)) is None
    # the last sample outside the band fixes N
    assert convergence_band([5, 5, 1, 1], 1, Fraction(1, 10)) == 1
    with pytest.raises(ValueError):
        convergence_band([1], 1, 0)


def test_convergence_report():
    rep = convergence_report(P23, limit=None, steps=60)
    assert rep.monotone_ok
    assert 0 < Fraction(rep.final_u_gap) < Fraction(1, 100)
    one = convergence_report(P23, steps=1)
    assert one.final_u_gap == "0.333333333333"
    assert one.final_v_gap == "0.222222222222"
    assert convergence_report(Params(7, 8), steps=50).monotone_ok
    with pytest.raises(ValueError):
        convergence_report(P23, steps=0)


def test_csv_outputs():
    pairs = generate_pairs(P23, MaxSteps(20))
    text = phases_to_csv(segment_phases(pairs), pairs)
    lines = text.splitlines()
    assert lines[0] == "eta,modifies,head,tail,lambda,u_p,v_p"
    assert lines[1] == "1,v,0,1,1,1,1"
    seq = sequences_to_csv(extract_sequences(pairs)).splitlines()
    assert seq[0] == "i,tu_p,tu_d,tv_p,tv_d,tw_value_approx"
    assert seq[1] == "0,1,1,1,1,1.500000000"


@settings(max_examples=10)
@given(st.sampled_from(TEST_PARAMS), st.integers(10, 300))
def test_monotone_any_prefix(ab, n):
    from ladder.phases import monotone_ok
    assert monotone_ok(generate_pairs(Params(*ab), MaxSteps(n)))
