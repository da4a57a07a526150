"""Faces of weight polytopes and the parabolics they determine.

All geometry is exact: facets are found from affinely independent point
subsets with rational normals, and every proper face is an intersection of
facets.  Multiplicities play no role, only the weight support does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _exact
from .repcomb import RepSum
from .rootdata import Coweight, RootDatum, Weight, matvec


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    normal: Coweight  # fundamental-coweight coordinates, integral
    face_weights: tuple[Weight, ...]
    complement_weights: tuple[Weight, ...]

    def __post_init__(self):
        if not self.face_weights or not self.complement_weights:
            raise PolytopeError("a face must be a nonempty proper subset")


@dataclass(frozen=True)
class ParabolicDescriptor:
    datum: RootDatum
    levi_simple_roots: tuple[int, ...]
    chamber: tuple[tuple[int, ...], ...]  # Weyl matrix w with w(P) containing the positive roots
    roots: frozenset[Weight]  # roots of P, weight coordinates

    @property
    def is_borel(self) -> bool:
        return not self.levi_simple_roots

    def levi_type(self) -> str:
        return levi_type_string(self.datum, self.levi_simple_roots)


def _all_roots(datum: RootDatum) -> list[Weight]:
    pos = list(datum.positive_roots_weights)
    return pos + [tuple(-x for x in r) for r in pos]


def _to_coweight(datum: RootDatum, functional: Sequence[int]) -> Coweight:
    # functional is given in simple-coroot coordinates (dot product with weights)
    return datum.coroot_to_coweight(functional)


def _facets(points: list[Weight]) -> list[tuple[tuple[int, ...], frozenset[Weight]]]:
    dim = len(points[0])
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    if _exact.rank(diffs) < dim:
        raise PolytopeError("weight support is not full-dimensional")
    found: dict[frozenset, tuple[int, ...]] = {}
    for subset in itertools.combinations(points, dim):
        rows = [list(p) + [-1] for p in subset]  # n.p - b = 0
        ns = _exact.nullspace(rows, dim + 1)
        if len(ns) != 1:
            continue
        vec = ns[0]
        n, b = vec[:dim], vec[dim]
        if all(x == 0 for x in n):
            continue
        vals = [sum(Fraction(x) * y for x, y in zip(n, p)) for p in points]
        if all(v <= b for v in vals):
            sign = 1
        elif all(v >= b for v in vals):
            sign = -1
        else:
            continue
        on = frozenset(p for p, v in zip(points, vals) if v == b)
        if on not in found:
            found[on] = _exact.primitive([sign * x for x in n])
    return list((normal, pts) for pts, normal in found.items())


def _all_faces(points: list[Weight]) -> dict[frozenset, tuple[int, ...]]:
    facets = _facets(points)
    faces: dict[frozenset, list[tuple[int, ...]]] = {}
    for normal, pts in facets:
        faces[pts] = [normal]
    frontier = list(faces)
    while frontier:
        new = []
        for f in frontier:
            for normal, pts in facets:
                g = f & pts
                if g and g not in faces:
                    faces[g] = None
                    new.append(g)
        frontier = new
    out = {}
    for f in faces:
        containing = [n for n, pts in facets if f <= pts]
        total = [sum(c) for c in zip(*containing)]
        out[f] = _exact.primitive(total)
    return out


def _face_sort_key(face: Face):
    return (len(face.face_weights), face.face_weights)


def weight_polytope_faces(rep: RepSum, up_to_weyl: bool = False) -> list[Face]:
    """All proper faces of conv(weights of ``rep``).

    With ``up_to_weyl`` only faces whose normal is dominant are returned,
    one per Weyl orbit.
    """
    datum = rep.datum
    support = sorted(rep.weight_support())
    if len(support) < 2:
        raise PolytopeError("zero-dimensional weight support has no proper faces")
    faces = []
    for pts, functional in _all_faces(support).items():
        fw = tuple(sorted(pts))
        comp = tuple(w for w in support if w not in pts)
        normal = _to_coweight(datum, functional)
        if up_to_weyl and any(x < 0 for x in normal):
            continue
        faces.append(Face(normal, fw, comp))
    faces.sort(key=_face_sort_key)
    if up_to_weyl:
        # several faces in one orbit can share the dominant chamber on its walls
        seen, unique = set(), []
        for f in faces:
            key = frozenset(_orbit_of_set(datum, f.face_weights))
            if key not in seen:
                seen.add(key)
                unique.append(f)
        faces = unique
    return faces


def _orbit_of_set(datum: RootDatum, weights: Sequence[Weight]):
    out = set()
    for m, _ in datum.weyl_group:
        out.add(tuple(sorted(matvec(m, w) for w in weights)))
    return out


def stabilizing_roots(rep: RepSum, face: Face) -> frozenset[Weight]:
    """Roots whose raising operators preserve the span of the complement weights."""
    support = set(face.face_weights) | set(face.complement_weights)
    comp = set(face.complement_weights)
    out = set()
    for beta in _all_roots(rep.datum):
        ok = True
        for mu in comp:
            nu = tuple(a + b for a, b in zip(mu, beta))
            if nu in support and nu not in comp:
                ok = False
                break
        if ok:
            out.add(beta)
    return frozenset(out)


def _is_closed(datum: RootDatum, roots: frozenset[Weight]) -> bool:
    allroots = set(_all_roots(datum))
    for a, b in itertools.combinations(roots, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in allroots and s not in roots:
            return False
    return True


def parabolic_from_roots(datum: RootDatum, roots: frozenset[Weight]) -> ParabolicDescriptor:
    allroots = set(_all_roots(datum))
    if not roots <= allroots:
        raise PolytopeError("not a set of roots")
    if roots | {tuple(-x for x in r) for r in roots} != allroots:
        raise PolytopeError("root set is not parabolic: misses a root and its negative")
    if not _is_closed(datum, roots):
        raise PolytopeError("root set is not parabolic: not closed under addition")
    positive = set(datum.positive_roots_weights)
    for m, _ in datum.weyl_group:
        image = {matvec(m, r) for r in roots}
        if positive <= image:
            levi = tuple(i for i, a in enumerate(datum.simple_roots_weights)
                         if tuple(-x for x in a) in image)
            return ParabolicDescriptor(datum, levi, m, roots)
    raise PolytopeError("root set is not parabolic: contains no positive system")


def face_parabolic(rep: RepSum, face: Face) -> ParabolicDescriptor:
    return parabolic_from_roots(rep.datum, stabilizing_roots(rep, face))


def check_levi_action(rep: RepSum, face: Face) -> bool:
    """Roots moving inside the face weights must lie in the Levi of the stabilizer."""
    stab = stabilizing_roots(rep, face)
    fw = set(face.face_weights)
    for beta in _all_roots(rep.datum):
        for mu in fw:
            if tuple(a + b for a, b in zip(mu, beta)) in fw:
                if tuple(-x for x in beta) not in stab or beta not in stab:
                    return False
                break
    return True


def cocharacter_for_parabolic(pd: ParabolicDescriptor, coroot_lattice: bool = False) -> Coweight:
    """Coweight that is >= 0 on the roots of P and < 0 on the other roots.

    The sum of fundamental coweights dual to the non-Levi simple roots,
    moved back from the standard chamber.  With ``coroot_lattice`` the
    result is scaled to the smallest positive multiple in the coroot lattice.
    """
    datum = pd.datum
    n = datum.rank
    std = tuple(0 if i in pd.levi_simple_roots else 1 for i in range(n))
    # chamber m sends P to a standard parabolic; apply m^{-1} to the coweight
    inv = _inverse_weyl(datum, pd.chamber)
    c = _act_on_coweight(datum, inv, std)
    if coroot_lattice:
        k = 1
        while any(x.denominator != 1 for x in datum.coweight_to_coroot(tuple(k * y for y in c))):
            k += 1
        c = tuple(k * y for y in c)
    return c


def _inverse_weyl(datum: RootDatum, m):
    for g, _ in datum.weyl_group:
        prod = tuple(tuple(sum(g[i][k] * m[k][j] for k in range(datum.rank))
                           for j in range(datum.rank)) for i in range(datum.rank))
        if all(prod[i][j] == int(i == j) for i in range(datum.rank) for j in range(datum.rank)):
            return g
    raise PolytopeError("not a Weyl group element")


def _act_on_coweight(datum: RootDatum, m, c: Coweight) -> Coweight:
    # (m c)_i = <alpha_i, m c> = <m^{-1} alpha_i, c>
    inv = _inverse_weyl(datum, m)
    out = []
    for a in datum.simple_roots_weights:
        r = datum.weight_to_root(matvec(inv, a))
        out.append(int(sum(x * y for x, y in zip(r, c))))
    return tuple(out)


def weyl_act_coweight(datum: RootDatum, m, c: Coweight) -> Coweight:
    return _act_on_coweight(datum, m, c)


def levi_type_string(datum: RootDatum, levi: Sequence[int]) -> str:
    a = datum.cartan_matrix
    comps = []
    remaining = set(levi)
    while remaining:
        start = min(remaining)
        comp, stack = {start}, [start]
        while stack:
            i = stack.pop()
            for j in remaining:
                if j not in comp and a[i][j] != 0:
                    comp.add(j)
                    stack.append(j)
        remaining -= comp
        comps.append(sorted(comp))
    names = [_component_type(a, c) for c in comps]
    left = "x".join(names) if names else "T"
    return f"{left} ⊂ {datum.name}"


def _component_type(a, comp: list[int]) -> str:
    k = len(comp)
    if k == 1:
        return "A1"
    edges = {(i, j): (a[i][j], a[j][i]) for i in comp for j in comp if i < j and a[i][j] != 0}
    labels = [max(-x, -y) for x, y in edges.values()]
    if 3 in labels:
        return "G2"
    degrees = {i: sum(1 for e in edges if i in e) for i in comp}
    if 2 in labels:
        if k == 4 and all(d <= 2 for d in degrees.values()):
            (i, j), = [e for e, l in zip(edges, labels) if l == 2]
            if degrees[i] == 2 and degrees[j] == 2:
                return "F4"
        if k == 2:
            return "B2"
        (i, j), = [e for e, l in zip(edges, labels) if l == 2]
        end = i if degrees[i] == 1 else j
        other = j if end == i else i
        # a[end][other] = -2 means the end root is long (C type)
        return f"C{k}" if a[end][other] == -2 else f"B{k}"
    branch = [i for i, d in degrees.items() if d == 3]
    if not branch:
        return f"A{k}"
    b = branch[0]
    arms = []
    for nb in [j for j in comp if (min(b, j), max(b, j)) in edges]:
        length, prev, cur = 1, b, nb
        while True:
            nxt = [j for j in comp if j not in (prev, cur) and (min(cur, j), max(cur, j)) in edges]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{k}"
    return f"E{k}"


def face_to_json(rep: RepSum, face: Face) -> dict:
    pd = face_parabolic(rep, face)
    return {
        "normal": list(face.normal),
        "face_weights": [list(w) for w in face.face_weights],
        "levi_type": pd.levi_type(),
        "levi_simple_roots": list(pd.levi_simple_roots),
    }
