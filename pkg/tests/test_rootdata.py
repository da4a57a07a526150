from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from ffram.rootdata import (CartanType, RootDataError, build_root_system, datum_from_json, datum_to_json,
                            dominant_representative, dominant_with_sign, matvec, pairing, rho, rho_check,
                            rho_vee_doubled, weyl_orbit)


@pytest.mark.parametrize("name", sorted(oracles.CARTAN))
def test_cartan_matrix_and_roots_match_hand_typed(name):
    d = build_root_system(name)
    assert d.cartan_matrix == oracles.CARTAN[name]
    assert sorted(d.positive_roots) == oracles.positive_roots(oracles.CARTAN[name])
    assert d.weyl_order == len(oracles.weyl_group_with_signs(oracles.CARTAN[name]))


@pytest.mark.parametrize("name,npos,order", [("A1", 1, 2), ("G2", 6, 12), ("B2", 4, 8), ("F4", 24, 1152),
                                             ("E6", 36, 51840), ("D4", 12, 192)])
def test_counts(name, npos, order):
    d = build_root_system(name)
    assert len(d.positive_roots) == npos
    assert d.weyl_order == order


@pytest.mark.parametrize("family,rank", [("E", 5), ("F", 3), ("G", 3), ("B", 1), ("D", 2), ("X", 2), ("A", 0)])
def test_invalid_types(family, rank):
    with pytest.raises(RootDataError):
        CartanType(family, rank)


def test_pairings():
    for name in ("A3", "B2", "G2", "C3"):
        d = build_root_system(name)
        a = d.cartan_matrix
        for i in range(d.rank):
            coroot = a[i]  # alpha_i^vee in fundamental-coweight coordinates
            for j in range(d.rank):
                omega = tuple(int(k == j) for k in range(d.rank))
                assert pairing(d, omega, coroot) == int(i == j)
                assert pairing(d, d.simple_roots_weights[j], coroot) == a[i][j]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "C3", "D4", "F4"])
def test_rho(name):
    d = build_root_system(name)
    assert rho_check(d)
    # <rho, alpha_i^vee> = 1
    assert rho(d) == (1,) * d.rank
    assert len(rho_vee_doubled(d)) == d.rank


def test_rho_a2():
    d = build_root_system("A2")
    two_rho = [sum(r[i] for r in d.positive_roots) for i in range(2)]
    assert two_rho == [2, 2]


def test_orbits():
    assert weyl_orbit(build_root_system("A1"), (1,)) == {(1,), (-1,)}
    g2 = build_root_system("G2")
    assert len(weyl_orbit(g2, (1, 0))) == 6
    assert weyl_orbit(g2, (0, 0)) == {(0, 0)}


def test_dominant_representative_examples():
    a1 = build_root_system("A1")
    assert dominant_representative(a1, (3,)) == ((3,), [])
    assert dominant_representative(a1, (-1,)) == ((1,), [0])
    a2 = build_root_system("A2")
    w = a2.apply_word([0, 1], (1, 0))
    dom, word = dominant_representative(a2, w)
    assert dom == (1, 0) and a2.apply_word(word, dom) == w


@given(st.sampled_from(["A2", "B2", "G2", "A3", "C3"]), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_dominant_representative_round_trip(name, raw):
    d = build_root_system(name)
    w = tuple(raw[: d.rank])
    dom, word = dominant_representative(d, w)
    assert d.is_dominant(dom)
    assert d.apply_word(word, dom) == w
    assert dom in weyl_orbit(d, w) and w in weyl_orbit(d, dom)
    assert dominant_with_sign(d, w)[0] == dom


@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.data())
def test_weyl_elements_preserve_form(name, data):
    d = build_root_system(name)
    m, length = data.draw(st.sampled_from(d.weyl_group))
    u = tuple(data.draw(st.integers(-3, 3)) for _ in range(d.rank))
    v = tuple(data.draw(st.integers(-3, 3)) for _ in range(d.rank))
    assert d.inner(matvec(m, u), matvec(m, v)) == d.inner(u, v)


def test_lengths_and_longest():
    for name in ("A2", "B2", "G2", "A3"):
        d = build_root_system(name)
        lengths = [l for _, l in d.weyl_group]
        assert max(lengths) == len(d.positive_roots)
        w0 = d.longest_element
        assert matvec(w0, rho(d)) == tuple(-x for x in rho(d))


def test_dual_swaps_b_and_c():
    assert build_root_system("B3").dual().cartan_matrix == build_root_system("C3").cartan_matrix
    g2 = build_root_system("G2")
    assert g2.dual().cartan_matrix == tuple(zip(*g2.cartan_matrix))


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "E6"])
def test_json_round_trip(name):
    d = build_root_system(name)
    assert datum_from_json(datum_to_json(d)) == d


def test_json_mismatch_rejected():
    obj = datum_to_json(build_root_system("B2"))
    obj["cartan_matrix"] = [[2, -1], [-1, 2]]
    with pytest.raises(RootDataError):
        datum_from_json(obj)


def test_rank_mismatch():
    with pytest.raises(RootDataError):
        pairing(build_root_system("A2"), (1,), (1, 0))
