from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffram.rootdata import build_root_system
from ffram.weil import (WeilError, WeilNumberClaim, avg_bound_exponent, berlekamp_massey, budget_report,
                        d_of_W, dim_bun, dim_hecke, forward_power_sum, recover_power_sum, verify_weil,
                        weil_weight_cap, weil_weight_cap_proof_form)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_q_itself_has_weight_two(q):
    assert verify_weil(WeilNumberClaim((1, -q), q, 2)).ok
    assert not verify_weil(WeilNumberClaim((1, -q), q, 1)).ok


def test_quadratic_weight_one():
    # roots (-1 +- sqrt(-7))/2 have modulus sqrt 2
    rep = verify_weil(WeilNumberClaim((1, 1, 2), 2, 1))
    assert rep.ok and len(rep.roots) == 2
    for r in rep.roots:
        assert abs(r.modulus - 2 ** 0.5) < 1e-12


@pytest.mark.parametrize("q", [2, 3, 5])
def test_q_plus_one_is_not_weil(q):
    for w in range(5):
        assert not verify_weil(WeilNumberClaim((1, -(q + 1)), q, w)).ok


def test_elliptic_curve_frobenius():
    # x^2 - a x + q with |a| <= 2 sqrt q
    for a in range(-4, 5):
        assert verify_weil(WeilNumberClaim((1, -a, 5), 5, 1)).ok
    assert not verify_weil(WeilNumberClaim((1, -5, 5), 5, 1)).ok


def test_claim_validation():
    with pytest.raises(WeilError):
        WeilNumberClaim((2, 1), 3, 1)
    with pytest.raises(WeilError):
        WeilNumberClaim((1, 1), 6, 1)
    with pytest.raises(WeilError):
        WeilNumberClaim((1,), 3, 1)
    with pytest.raises(WeilError):
        verify_weil(WeilNumberClaim((1, -3), 3, 2), tol=0)


def test_berlekamp_massey_small():
    assert berlekamp_massey([1, 1, 2, 3, 5, 8, 13]) == [1, -1, -1]
    assert berlekamp_massey([2 ** n for n in range(1, 8)]) == [1, -2]
    assert berlekamp_massey([0, 0, 0]) == [1]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_berlekamp_massey_annihilates(rec, init):
    # generate with a known recurrence, check the found one annihilates the data
    L = len(rec)
    s = init[:L]
    for n in range(L, 14):
        s.append(-sum(rec[i - 1] * s[n - i] for i in range(1, L + 1)))
    c = berlekamp_massey(s)
    assert len(c) - 1 <= L
    for n in range(len(c) - 1, len(s)):
        assert sum(c[i] * s[n - i] for i in range(len(c))) == 0


@pytest.mark.parametrize("terms", [{3: 1, 2: -1}, {7: 4}, {5: 1, 2: 2}, {-2: 1, 2: 1}, {9: 1, 3: -2, 1: 1}])
def test_recover_integer_sums(terms):
    seq = forward_power_sum(terms, 12)
    rec = recover_power_sum(seq)
    assert rec.status == "ok"
    assert rec.as_integer_dict() == terms


def test_recover_with_offset():
    terms = {4: 1, 3: -1}
    rec = recover_power_sum(forward_power_sum(terms, 10, start=0), start=0)
    assert rec.as_integer_dict() == terms
    assert rec.evaluate(0) == 0


def test_recover_gaussian_conjugates():
    # (1+i)^n + (1-i)^n
    seq = [round((((1 + 1j) ** n) + ((1 - 1j) ** n)).real) for n in range(1, 13)]
    rec = recover_power_sum(seq)
    assert rec.status == "ok"
    assert len(rec.terms) == 2
    assert {r.poly for r, _, _ in rec.terms} == {(1, -2, 2)}
    for n in range(1, 13):
        assert abs(rec.evaluate(n) - seq[n - 1]) < 1e-6


def test_recover_undetermined_when_short():
    seq = forward_power_sum({5: 1, 3: 1, 2: 1}, 4)
    assert recover_power_sum(seq).status == "undetermined"


def test_recover_rejects_non_integers():
    with pytest.raises(WeilError):
        recover_power_sum([1, 2.5, 3])


def test_recover_non_semisimple():
    # n 2^n is not a sum of exponentials
    seq = [n * 2 ** n for n in range(1, 11)]
    assert recover_power_sum(seq).status == "not-semisimple"


@given(st.dictionaries(st.integers(-9, 9).filter(bool), st.integers(-3, 3).filter(bool), min_size=1, max_size=4))
def test_recover_round_trip(terms):
    seq = forward_power_sum(terms, 2 * len(terms) + 4)
    assert recover_power_sum(seq).as_integer_dict() == terms


def test_budget_spot_values():
    assert dim_bun(3, 0, 2) == 3
    assert avg_bound_exponent(3, 0, 2, 4) == -1
    assert weil_weight_cap(8, 2, 1, 0, 2, 2) == 18
    assert dim_hecke(3, 2, 1, 4) == 10
    for d in (1, 3, 8, 14):
        assert dim_bun(d, 1, 0) == 0


def test_proof_form_doubles_the_stated_cap():
    # the weight reached inside the argument is twice the stated one
    for args in [(3, 0, 2, 4, 2, 6), (8, 2, 1, 0, 2, 2), (14, 3, 0, 1, 10, 0)]:
        assert weil_weight_cap_proof_form(*args) == 2 * weil_weight_cap(*args)
    rep = budget_report(8, 2, 1, 0, 2, 2)
    assert rep["weil_weight_cap"] == "18" and rep["weil_weight_cap_proof_form"] == 36


def test_half_integral_cap():
    assert weil_weight_cap(3, 1, 0, 0, 1, 0) == Fraction(1, 2)


def test_budgets_reject_negative_inputs():
    with pytest.raises(WeilError):
        dim_bun(-1, 0, 0)
    with pytest.raises(WeilError):
        avg_bound_exponent(3, 0, 0, -1)


def test_d_of_W():
    a1 = build_root_system("A1")
    assert d_of_W(a1, [(1, (1,)), (2, (3,))]) == 7
    assert d_of_W(a1, {1: (2,)}) == 2
    g2 = build_root_system("G2")
    assert d_of_W(g2, [(3, (1, 0))]) == 30
    with pytest.raises(WeilError):
        d_of_W(a1, [(0, (1,))])


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 4), st.integers(0, 4))
def test_d_of_W_additive(d1, d2, l1, l2):
    a2 = build_root_system("A2")
    lam1, lam2 = (l1, 0), (0, l2)
    assert d_of_W(a2, [(d1, lam1), (d2, lam2)]) == d_of_W(a2, [(d1, lam1)]) + d_of_W(a2, [(d2, lam2)])
