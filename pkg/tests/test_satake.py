import cmath
import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

import oracles
from ffram.repcomb import weight_multiplicities, weyl_dim
from ffram.rootdata import build_root_system
from ffram.satake import (SatakeError, SatakeParameter, TraceSequence, base_change, dual_weight, eigenvalues,
                          expected_leading_power, is_tempered, leading_term, power_sums, principal_parameter,
                          spectral_radius_from_traces, temperedness_witness, tr_lambda, trace_sequence,
                          weyl_act)

TYPES = ["A1", "A2", "B2", "C2", "G2"]


def test_trace_examples():
    a1, a2 = build_root_system("A1"), build_root_system("A2")
    one = SatakeParameter(a2, (1, 1))
    assert tr_lambda(one, (2, 1)) == weyl_dim(a2, (2, 1))
    z = Fraction(3, 7)
    assert tr_lambda(SatakeParameter(a1, (z,)), (1,)) == z + 1 / z
    t = principal_parameter(a1, 5)
    assert tr_lambda(t, (1,)) == sympy.sqrt(5) + 1 / sympy.sqrt(5)
    assert tr_lambda(t, (0,)) == 1
    for q in (2, 3, 7):
        assert tr_lambda(principal_parameter(a2, q), (1, 0)) == q + 1 + Fraction(1, q)


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (1, 1)), ("B2", (1, 1)), ("C2", (0, 2)),
                                      ("G2", (1, 0)), ("G2", (0, 1))])
@pytest.mark.parametrize("q", [2, 4, 9])
def test_leading_term(name, lam, q):
    d = build_root_system(name)
    t = principal_parameter(d, q)
    power, coeff = leading_term(t, lam)
    assert coeff == 1
    assert power == expected_leading_power(d, lam)
    # independent: <lam, rho> with rho = half the sum of positive coroots of the group
    two_rho = [sum(c[i] for c in oracles.positive_roots(oracles.transpose(oracles.CARTAN[name])))
               for i in range(d.rank)]
    assert power == Fraction(sum(x * y for x, y in zip(two_rho, lam)), 2)


def test_tempered_examples():
    a1 = build_root_system("A1")
    assert is_tempered(SatakeParameter(a1, (cmath.exp(0.3j),)))
    assert not is_tempered(principal_parameter(a1, 4))
    assert is_tempered(SatakeParameter(a1, (1 + 1e-12,)), 1e-9)
    with pytest.raises(SatakeError):
        is_tempered(SatakeParameter(a1, (1,)), 0)


def test_base_change_examples():
    a1 = build_root_system("A1")
    t = SatakeParameter(a1, (Fraction(2),))
    assert base_change(t, 1).values == t.values
    assert tr_lambda(base_change(t, 3), (1,)) == 8 + Fraction(1, 8)
    with pytest.raises(SatakeError):
        base_change(t, 0)


def _param(datum, data, tempered=None):
    vals = []
    for _ in range(datum.rank):
        r = 1.0 if tempered else data.draw(st.floats(0.5, 2.0))
        vals.append(cmath.rect(r, data.draw(st.floats(-3.1, 3.1))))
    return SatakeParameter(datum, tuple(vals))


def _close(a, b):
    return abs(complex(a) - complex(b)) <= 1e-9 * max(1, abs(complex(a)))


@given(st.sampled_from(TYPES), st.data())
def test_weyl_invariance_and_duality(name, data):
    d = build_root_system(name)
    t = _param(d, data)
    lam = tuple(data.draw(st.integers(0, 2)) for _ in range(d.rank))
    m, _ = data.draw(st.sampled_from(d.weyl_group))
    base = tr_lambda(t, lam)
    assert _close(tr_lambda(weyl_act(t, m), lam), base)
    assert _close(tr_lambda(t.inverse(), lam), tr_lambda(t, dual_weight(d, lam)))


@given(st.sampled_from(TYPES), st.data(), st.integers(1, 5))
def test_base_change_is_power_sum(name, data, n):
    d = build_root_system(name)
    t = _param(d, data)
    lam = tuple(data.draw(st.integers(0, 1)) for _ in range(d.rank))
    direct = sum(e ** n for e in eigenvalues(t, lam))
    assert _close(tr_lambda(base_change(t, n), lam), direct)


@given(st.sampled_from(TYPES), st.data(), st.integers(1, 6), st.booleans())
def test_base_change_preserves_temperedness(name, data, n, tempered):
    d = build_root_system(name)
    t = _param(d, data, tempered=tempered)
    assert is_tempered(base_change(t, n)) == is_tempered(t)


def test_dual_weight():
    a2 = build_root_system("A2")
    assert dual_weight(a2, (1, 0)) == (0, 1)
    assert dual_weight(build_root_system("B2"), (1, 2)) == (1, 2)


def test_spectral_radius_examples():
    seq = TraceSequence(tuple(Fraction(4) for _ in range(8)), 4)
    assert spectral_radius_from_traces(seq).radius == 1
    seq = TraceSequence(power_sums([Fraction(2), Fraction(1, 2)], 4), 2)
    assert seq.entries[:3] == (Fraction(5, 2), Fraction(17, 4), Fraction(65, 8))
    r = spectral_radius_from_traces(seq)
    assert r.exact and r.radius == 2


def test_spectral_radius_of_trace_sequence():
    a2 = build_root_system("A2")
    t = SatakeParameter(a2, (Fraction(3, 2), Fraction(-1, 3)))
    seq = trace_sequence(t, (1, 1), 16)
    expected = max(abs(t.evaluate(mu)) for mu in weight_multiplicities(a2, (1, 1)).mult)
    assert spectral_radius_from_traces(seq).radius == expected


@given(st.lists(st.tuples(st.integers(-30, 30), st.integers(1, 9)), min_size=1, max_size=8))
def test_spectral_radius_exact(pairs):
    eig = [Fraction(a, b) for a, b in pairs]
    r = spectral_radius_from_traces(TraceSequence(power_sums(eig, 2 * len(eig)), len(eig)))
    assert r.radius == max(abs(e) for e in eig)


@given(st.lists(st.tuples(st.floats(0.1, 3.0), st.floats(-3.1, 3.1)), min_size=1, max_size=8))
def test_spectral_radius_float(polar):
    eig = [cmath.rect(r, a) for r, a in polar]
    r = spectral_radius_from_traces(TraceSequence(power_sums(eig, 2 * len(eig)), len(eig)))
    true = max(abs(e) for e in eig)
    assert abs(r.radius - true) <= 1e-9 * true


def test_bound_on_traces_is_enforced():
    # entries consistent with dim 1 and radius 1 but claimed dim too small for the growth
    with pytest.raises(SatakeError):
        spectral_radius_from_traces(TraceSequence((Fraction(1), Fraction(5), Fraction(1), Fraction(1)), 1))


def first_witness_by_hand(t, lam0, C, n_max, k_max):
    for s in range(2, n_max + k_max + 1):
        for k in range(1, k_max + 1):
            n = s - k
            if not 1 <= n <= n_max:
                continue
            lam = tuple(k * x for x in lam0)
            eig = eigenvalues(t, lam)
            if abs(sum(complex(e) ** n for e in eig)) > C * len(eig) * (1 + 1e-9):
                return n, k
    return None


def test_witness_a1():
    a1 = build_root_system("A1")
    t = SatakeParameter(a1, (1.1,))
    r = temperedness_witness(t, (1,), C=10)
    assert r.found and (r.n, r.k) == first_witness_by_hand(t, (1,), 10, 64, 8)
    p = temperedness_witness(principal_parameter(a1, 4), (1,), C=1)
    assert (p.n, p.k) == (1, 1)


@given(st.sampled_from(["A1", "A2", "B2"]), st.data())
def test_witness_never_fires_on_tempered(name, data):
    d = build_root_system(name)
    t = _param(d, data, tempered=True)
    r = temperedness_witness(t, (1,) * d.rank, C=data.draw(st.floats(1, 10)), n_max=12, k_max=3)
    assert not r.found and r.verdict == "exhausted"


def test_witness_rejects_bad_input():
    a2 = build_root_system("A2")
    t = SatakeParameter(a2, (1, 1))
    with pytest.raises(SatakeError):
        temperedness_witness(t, (1, 0))
    with pytest.raises(SatakeError):
        temperedness_witness(t, (1, 1), C=0.5)


@pytest.mark.parametrize("k", range(2, 8))
def test_spectral_radius_float_repeated(k):
    eig = [cmath.rect(1.7, 0.4)] * k + [0.3, -1.2]
    r = spectral_radius_from_traces(TraceSequence(power_sums(eig, 2 * len(eig)), len(eig)))
    assert abs(r.radius - 1.7) <= 1e-9 * 1.7


@settings(max_examples=25)
@given(st.lists(st.tuples(st.floats(0.1, 3.0), st.floats(-3.1, 3.1), st.integers(1, 3)), min_size=1, max_size=3))
def test_spectral_radius_float_with_multiplicities(polar):
    distinct = [cmath.rect(r, a) for r, a, _ in polar]
    scale = max(abs(z) for z in distinct)
    # nearly coincident clusters are ill-conditioned from float traces
    assume(all(abs(x - y) > 0.05 * scale for x, y in itertools.combinations(distinct, 2)))
    eig = [cmath.rect(r, a) for r, a, m in polar for _ in range(m)]
    r = spectral_radius_from_traces(TraceSequence(power_sums(eig, 2 * len(eig)), len(eig)))
    true = max(abs(e) for e in eig)
    assert abs(r.radius - true) <= 1e-9 * true
