import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ffram.polytope import (PolytopeError, check_levi_action, cocharacter_for_parabolic, face_parabolic,
                            parabolic_from_roots, stabilizing_roots, weight_polytope_faces)
from ffram.repcomb import RepSum, weight_multiplicities
from ffram.rootdata import build_root_system, pairing


def _support(rep):
    out = set()
    for s in rep.summands:
        out |= set(weight_multiplicities(rep.datum, s).mult)
    return out


def faces_by_functional_scan(rep, box=4):
    """Argmax sets of every integer functional in a box: all faces for these small polytopes."""
    d = rep.datum
    weights = sorted(_support(rep))
    found = set()
    for c in itertools.product(range(-box, box + 1), repeat=d.rank):
        if not any(c):
            continue
        vals = {w: pairing(d, w, c) for w in weights}
        top = max(vals.values())
        face = frozenset(w for w in weights if vals[w] == top)
        if len(face) < len(weights):
            found.add(face)
    return found


CASES = [("A1", ((1,),)), ("A2", ((1, 0),)), ("A2", ((1, 1),)), ("B2", ((1, 0),)), ("B2", ((0, 1),)),
         ("C2", ((1, 0),)), ("G2", ((1, 0),)), ("G2", ((0, 1),)), ("A3", ((1, 0, 0),)), ("C3", ((1, 0, 0),)),
         ("B2", ((1, 0), (0, 1)))]


@pytest.mark.parametrize("name,summands", CASES)
def test_faces_match_functional_scan(name, summands):
    rep = RepSum(build_root_system(name), summands)
    got = {frozenset(f.face_weights) for f in weight_polytope_faces(rep)}
    assert got == faces_by_functional_scan(rep)


@pytest.mark.parametrize("name,summands", CASES)
def test_face_invariants(name, summands):
    rep = RepSum(build_root_system(name), summands)
    d = rep.datum
    for f in weight_polytope_faces(rep):
        vals = {pairing(d, w, f.normal) for w in f.face_weights}
        assert len(vals) == 1
        top = vals.pop()
        assert all(pairing(d, w, f.normal) < top for w in f.complement_weights)
        assert all(float(x).is_integer() for x in f.normal)


def test_face_counts_from_examples():
    counts = {name: len(weight_polytope_faces(RepSum(build_root_system(t), (hw,))))
              for name, t, hw in [("SL2", "A1", (1,)), ("SL3", "A2", (1, 0)), ("SL4", "A3", (1, 0, 0)),
                                  ("Sp4", "C2", (1, 0)), ("Sp6", "C3", (1, 0, 0)), ("G2", "G2", (1, 0))]}
    assert counts == {"SL2": 2, "SL3": 6, "SL4": 14, "Sp4": 8, "Sp6": 26, "G2": 12}


def test_up_to_weyl_is_smaller():
    rep = RepSum(build_root_system("C3"), ((1, 0, 0),))
    reps = weight_polytope_faces(rep, up_to_weyl=True)
    assert sorted(len(f.face_weights) for f in reps) == [1, 2, 3]


@pytest.mark.parametrize("name,summands", CASES)
def test_parabolic_and_levi_for_every_face(name, summands):
    rep = RepSum(build_root_system(name), summands)
    d = rep.datum
    for f in weight_polytope_faces(rep):
        pd = face_parabolic(rep, f)
        roots = stabilizing_roots(rep, f)
        # closed under addition inside the root system
        all_roots = set(d.positive_roots_weights) | {tuple(-x for x in r) for r in d.positive_roots_weights}
        for a, b in itertools.product(roots, repeat=2):
            s = tuple(x + y for x, y in zip(a, b))
            if s in all_roots:
                assert s in roots
        # contains a Borel: half the roots at least, and every root or its negative
        assert all(r in roots or tuple(-x for x in r) in roots for r in all_roots)
        assert check_levi_action(rep, f)
        # the cocharacter separates P from the rest
        c = cocharacter_for_parabolic(pd)
        for r in all_roots:
            assert (pairing(d, r, c) >= 0) == (r in roots)


def test_sl_faces_give_maximal_parabolics():
    rep = RepSum(build_root_system("A3"), ((1, 0, 0),))
    for f in weight_polytope_faces(rep):
        pd = face_parabolic(rep, f)
        assert len(pd.levi_simple_roots) == 2
        k = len(f.face_weights)
        assert pd.levi_type() == {1: "A2 ⊂ A3", 2: "A1xA1 ⊂ A3", 3: "A2 ⊂ A3"}[k]


def test_siegel_face():
    rep = RepSum(build_root_system("C3"), ((1, 0, 0),))
    target = frozenset({(1, 0, 0), (-1, 1, 0), (0, -1, 1)})
    face = next(f for f in weight_polytope_faces(rep) if frozenset(f.face_weights) == target)
    assert face_parabolic(rep, face).levi_type() == "A2 ⊂ C3"


def test_single_vertex_a1_is_borel():
    rep = RepSum(build_root_system("A1"), ((1,),))
    for f in weight_polytope_faces(rep):
        assert face_parabolic(rep, f).levi_simple_roots == ()
        assert check_levi_action(rep, f)


def test_cocharacter_examples():
    a1 = build_root_system("A1")
    borel = parabolic_from_roots(a1, frozenset(a1.positive_roots_weights))
    assert cocharacter_for_parabolic(borel) == (1,)
    assert cocharacter_for_parabolic(borel, coroot_lattice=True) == (2,)
    g2 = build_root_system("G2")
    assert cocharacter_for_parabolic(parabolic_from_roots(g2, frozenset(g2.positive_roots_weights))) == (1, 1)
    a2 = build_root_system("A2")
    roots = frozenset(a2.positive_roots_weights) | {tuple(-x for x in a2.simple_roots_weights[1])}
    assert cocharacter_for_parabolic(parabolic_from_roots(a2, roots)) == (1, 0)


def test_degenerate_support_rejected():
    with pytest.raises(PolytopeError):
        weight_polytope_faces(RepSum(build_root_system("A2"), ((0, 0),)))


@settings(max_examples=12)
@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(0, 2), st.integers(0, 2))
def test_faces_are_weyl_stable(name, a, b):
    if a == b == 0:
        return
    d = build_root_system(name)
    rep = RepSum(d, ((a, b),))
    faces = {frozenset(f.face_weights) for f in weight_polytope_faces(rep)}
    for m, _ in d.weyl_group:
        for f in faces:
            img = frozenset(tuple(sum(m[i][j] * w[j] for j in range(2)) for i in range(2)) for w in f)
            assert img in faces
