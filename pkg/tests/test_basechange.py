import pytest
from hypothesis import given, settings, strategies as st

from ffram.basechange import (BaseChangeError, FrobeniusModel, additive_lang_check, chi_twisted_invariance,
                              lang_check, norm, run_experiment, satisfies_keq, solve_kottwitz,
                              trace_kernel_size, twisted_class, verify_commutator_identity, verify_norm_fact)


@pytest.fixture(scope="module")
def fm():
    return FrobeniusModel(2, 4)


def test_model_sizes(fm):
    assert len(fm.points()) == 2 ** 16
    for n in (1, 2, 4):
        pts = fm.fixed_points(n)
        assert len(pts) == 2 ** (4 * n)
        assert all(fm.is_fixed(g, n) and fm.contains(g) for g in pts[:50])
    with pytest.raises(BaseChangeError):
        fm.fixed_points(3)


def test_experiment_default_instance():
    rep = run_experiment(2, 4, 2, 1, 1, 1)
    assert rep.ok, rep.to_json()
    assert rep.gammas == 16 and rep.solutions > 0
    assert rep.control_registered


def test_experiment_other_parameters():
    rep = run_experiment(2, 2, 2, 1, 1, 1, control_trials=50)
    assert rep.ok
    # a*l - b*j = 1 with l = 1, j = 2
    assert run_experiment(2, 2, 1, 2, 3, 1, control_trials=20).ok


def test_parameter_checks(fm):
    g = fm.fixed_points(1)[0]
    with pytest.raises(BaseChangeError):
        solve_kottwitz(fm, g, 2, 1, 1, 0)
    with pytest.raises(BaseChangeError):
        solve_kottwitz(fm, g, 3, 2, 1, 1)
    bad = fm.fixed_points(2)[-1]
    with pytest.raises(BaseChangeError):
        solve_kottwitz(fm, bad, 2, 1, 1, 1)


def test_identity_gamma(fm):
    e = fm.mat.identity
    res = solve_kottwitz(fm, e, 2, 1, 1, 1)
    assert res.complete and res.solutions
    # c^-1 sigma^2(c) = 1 means c is F_{q^2}-rational
    assert all(fm.is_fixed(s.c, 2) for s in res.solutions)
    assert len(res.solutions) == len(fm.fixed_points(2))
    for s in res.solutions:
        assert satisfies_keq(fm, s)
        assert norm(fm, s.delta, 2, 1) == e


def test_norm_with_l_one_is_delta(fm):
    for g in fm.fixed_points(2)[:40]:
        assert norm(fm, g, 1) == g


def test_solutions_satisfy_both_identities(fm):
    for gamma in fm.fixed_points(1)[::3]:
        for s in solve_kottwitz(fm, gamma, 2, 1, 1, 1).solutions:
            assert satisfies_keq(fm, s)
            assert verify_commutator_identity(fm, s)
            assert verify_norm_fact(fm, s)


def test_deltas_form_one_twisted_class(fm):
    sols = next(r.solutions for r in (solve_kottwitz(fm, g, 2, 1, 1, 1) for g in fm.fixed_points(1)[1:])
                if r.solutions)
    deltas = {s.delta for s in sols}
    assert deltas == twisted_class(fm, next(iter(deltas)), 2, 1)
    assert chi_twisted_invariance(fm, next(iter(deltas)), 2, 1)


def test_budgeted_search_is_marked_incomplete(fm):
    gamma = fm.mat.identity
    res = solve_kottwitz(fm, gamma, 2, 1, 1, 1, budget=1000)
    assert not res.complete and res.searched == 1000
    full = {s.c for s in solve_kottwitz(fm, gamma, 2, 1, 1, 1).solutions}
    assert {s.c for s in res.solutions} <= full


def test_chi_rejects_unfixed(fm):
    g = fm.fixed_points(2)[-1]
    assert fm.chi(2, g) in (0, 1)
    with pytest.raises(BaseChangeError):
        fm.chi(1, g)


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_lang_on_the_group(fm, l):
    rep = lang_check(fm, l)
    assert rep.degenerate == (l == 4)
    if l == 4:
        # sigma^L is the identity on J(F_{q^L}), so the image is trivial
        assert rep.image_size == 1
    assert rep.caveat


@pytest.mark.parametrize("q,L", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_additive_lang_image_is_trace_kernel(q, L):
    rep = additive_lang_check(q, L, 1)
    assert rep.image_size == trace_kernel_size(q, L) == q ** (L - 1)
    assert not rep.surjective and rep.defect == q ** L - q ** (L - 1)


def test_additive_lang_degenerate():
    rep = additive_lang_check(2, 3, 3)
    assert rep.degenerate and rep.image_size == 1


def test_form_support_controls_character():
    top = FrobeniusModel(2, 2, ("topright",))
    g = ((1, 0), (1, 0), (0, 0), (1, 0))
    assert top.chi(1, g) == 1
    bottom = FrobeniusModel(2, 2, ("bottomleft",))
    assert bottom.chi(1, g) == 0


def test_model_too_large():
    with pytest.raises(BaseChangeError):
        FrobeniusModel(3, 4)


@settings(max_examples=10)
@given(st.integers(0, 15), st.integers(0, 2 ** 16 - 1))
def test_sigma_is_a_homomorphism(i, k):
    fm = FrobeniusModel(2, 4)
    g, h = fm.fixed_points(1)[i], fm.points()[k]
    mat = fm.mat
    assert fm.sigma(mat.mul(g, h)) == mat.mul(fm.sigma(g), fm.sigma(h))
    assert fm.sigma(h, 4) == h
