"""Brute-force checks of geometric supercuspidality on finite loop-group models.

A monomial datum model is a subgroup H of SL_r(F_q[t]/t^m), defined by a
membership predicate that makes sense over every F_{q^n}, together with an
additive form H -> F_{q^n}.  The character over F_{q^n} is
psi(Tr_{F_{q^n}/F_p}(form(h))), recorded as an exponent in Z/p.

Verdicts are finite evidence: PASS(n) means the character is nontrivial on
g N g^{-1} cap H for every standard radical N and every coset g P over
F_{q^n}; nothing is claimed beyond the degrees actually searched.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from ._exact import zero_in_convex_hull
from .loopgroup import (
    LoopGroupError,
    MatrixGroup,
    TruncatedLoopGroupModel,
    coset_count,
    coset_representatives,
    radical_elements,
    standard_parabolic_list,
    standard_parabolics,
)

__all__ = [
    "MGSError",
    "MonomialDatumModel",
    "TorusActionWeights",
    "Verdict",
    "SupercuspidalityReport",
    "epipelagic_sl2_datum",
    "nonsplit_cartan_datum",
    "split_cartan_datum",
    "conjugate_datum",
    "extend_scalars_character",
    "check_geometric_supercuspidality",
    "git_semistable_torus",
    "standard_parabolics",
    "check_character_multiplicative",
]

EPIPELAGIC_COORDINATES = ("topright", "bottomleft")
EPIPELAGIC_WEIGHTS = ((2,), (-2,))


class MGSError(ValueError):
    pass


@dataclass(frozen=True)
class TorusActionWeights:
    weights: tuple[tuple[int, ...], ...]
    support: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= i < len(self.weights) for i in self.support):
            raise MGSError("support index out of range")


def git_semistable_torus(w: TorusActionWeights) -> bool:
    """Hilbert-Mumford for a torus: 0 in the convex hull of the supported weights."""
    if not w.support:
        return False
    return zero_in_convex_hull([w.weights[i] for i in w.support])


@dataclass
class MonomialDatumModel:
    """(G, m, H, form) with H and form given uniformly over every F_{q^n}."""

    group: str
    q: int
    m: int
    contains: Callable  # (model, h) -> bool
    form: Callable  # (model, h) -> field element of F_{q^n}
    points: Callable  # (model) -> iterator over H(F_{q^n})
    order: Callable  # n -> |H(F_{q^n})|
    description: dict = field(default_factory=dict)
    torus_weights: TorusActionWeights | None = None

    def model(self, n: int = 1, n_cap: int = 0) -> TruncatedLoopGroupModel:
        return TruncatedLoopGroupModel(self.group, self.q, n, self.m, max(n, n_cap))


def extend_scalars_character(d: MonomialDatumModel, n: int, n_cap: int = 0):
    """chi_n as a function h -> exponent in Z/p, chi_n(h) = zeta_p ** exponent."""
    model = d.model(n, n_cap)
    F = model.field
    deg = model.degree

    def chi(h):
        if not d.contains(model, h):
            raise MGSError("element is not in H")
        return F.absolute_trace(d.form(model, h), deg)

    chi.model = model
    return chi


def check_character_multiplicative(d: MonomialDatumModel, n: int, samples: int | None = None,
                                   seed: int = 0) -> bool:
    """chi_n(h1 h2) = chi_n(h1) + chi_n(h2) in Z/p; exhaustive unless ``samples`` is given."""
    chi = extend_scalars_character(d, n)
    model = chi.model
    p = model.field.p
    pts = list(d.points(model))
    if samples is None:
        pairs: Iterator = itertools.product(pts, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(pts), rng.choice(pts)) for _ in range(samples))
    for h1, h2 in pairs:
        h = model.mat.mul(h1, h2)
        if not d.contains(model, h):
            return False
        if chi(h) != (chi(h1) + chi(h2)) % p:
            return False
    return True


# ---------------------------------------------------------------- presets


def _is_sl(model, h) -> bool:
    return model.mat.is_special(h)


def epipelagic_sl2_datum(q: int, support: Sequence[str] = EPIPELAGIC_COORDINATES) -> MonomialDatumModel:
    """H = {[[1+at, x+yt], [zt, 1+dt]]} in SL2(F_q[t]/t^2); form sums the chosen coordinates.

    "topright" is x (leading coefficient of the top-right entry) and
    "bottomleft" is z (t-coefficient of the bottom-left entry).
    """
    support = tuple(support)
    for s in support:
        if s not in EPIPELAGIC_COORDINATES:
            raise MGSError(f"unknown coordinate {s!r}")
    if len(set(support)) != len(support):
        raise MGSError("repeated coordinate in support")
    if q % 2 == 0 or q > 9:
        raise MGSError("the epipelagic preset needs odd q <= 9")

    def contains(model, h):
        one, zero = 1, 0
        a, b, c, d = h
        return a[0] == one and d[0] == one and c[0] == zero and _is_sl(model, h)

    def form(model, h):
        F = model.field
        total = 0
        if "topright" in support:
            total = F.add(total, h[1][0])
        if "bottomleft" in support:
            total = F.add(total, h[2][1])
        return total

    def points(model):
        F = model.field
        for a, x, y, z in itertools.product(model.scalars, repeat=4):
            d = F.sub(F.mul(x, z), a)
            yield ((1, a), (x, y), (0, z), (1, d))

    idx = tuple(EPIPELAGIC_COORDINATES.index(s) for s in support)
    return MonomialDatumModel(
        "SL2", q, 2, contains, form, points, lambda n: q ** (4 * n),
        {"preset": "epipelagic-sl2", "group": "SL2", "q": q, "m": 2, "support": list(support)},
        TorusActionWeights(EPIPELAGIC_WEIGHTS, idx),
    )


def _lie_algebra_datum(q: int, B: Callable, label: str, extra: dict) -> MonomialDatumModel:
    """H = 1 + t sl2 in SL2(F_q[t]/t^2) with form A -> tr(A B)."""

    def contains(model, h):
        return model.mat.reduce(h) == (1, 0, 0, 1) and _is_sl(model, h)

    def form(model, h):
        F = model.field
        A = [x[1] for x in h]
        b = B(F)
        total = 0
        for i in range(2):
            for j in range(2):
                total = F.add(total, F.mul(A[2 * i + j], b[2 * j + i]))
        return total

    def points(model):
        F = model.field
        for a, b, c in itertools.product(model.scalars, repeat=3):
            yield ((1, a), (0, b), (0, c), (1, F.neg(a)))

    desc = {"preset": label, "group": "SL2", "q": q, "m": 2}
    desc.update(extra)
    return MonomialDatumModel("SL2", q, 2, contains, form, points, lambda n: q ** (3 * n), desc)


def nonsplit_cartan_datum(q: int) -> MonomialDatumModel:
    """Form tr(AB) with B = [[0, 1], [r, 0]], r a nonsquare of F_q."""
    if q % 2 == 0:
        raise MGSError("the non-split Cartan preset needs odd q")

    def B(F):
        e = TruncatedLoopGroupModel("SL2", q, 1, 2).e
        r = F.nonsquare(e)
        return (0, 1, r, 0)

    return _lie_algebra_datum(q, B, "nonsplit-cartan", {})


def split_cartan_datum(q: int) -> MonomialDatumModel:
    """Control: B = [[0, 1], [1, 0]] has eigenvalues +-1 over F_q."""
    if q % 2 == 0:
        raise MGSError("the split Cartan control needs odd q")
    return _lie_algebra_datum(q, lambda F: (0, 1, 1, 0), "split-cartan", {})


def conjugate_datum(d: MonomialDatumModel, g_rows) -> MonomialDatumModel:
    """g H g^{-1} with the transported form; ``g_rows`` has entries over F_q (ring tuples)."""

    def g_of(model):
        g = model.mat.from_entries(g_rows)
        return g, model.mat.inv(g)

    def contains(model, h):
        g, gi = g_of(model)
        return d.contains(model, model.mat.mul(model.mat.mul(gi, h), g))

    def form(model, h):
        g, gi = g_of(model)
        return d.form(model, model.mat.mul(model.mat.mul(gi, h), g))

    def points(model):
        g, gi = g_of(model)
        for h in d.points(model):
            yield model.mat.mul(model.mat.mul(g, h), gi)

    desc = dict(d.description)
    desc["conjugated_by"] = [[list(x) if not isinstance(x, int) else [x] for x in row] for row in g_rows]
    return MonomialDatumModel(d.group, d.q, d.m, contains, form, points, d.order, desc, d.torus_weights)


# ---------------------------------------------------------------- verdicts


@dataclass
class Witness:
    parabolic: str
    g: tuple
    intersection_size: int

    def to_json(self, mat: MatrixGroup) -> dict:
        return {"parabolic": self.parabolic, "g": mat.to_json(self.g),
                "intersection_size": self.intersection_size}


@dataclass
class Verdict:
    n: int
    passed: bool | None  # None when the budget ran out
    witness: Witness | None = None
    checked_cosets: int = 0
    total_cosets: int = 0
    conjugations: int = 0
    field_label: str = ""

    @property
    def label(self) -> str:
        if self.passed is None:
            return f"PARTIAL({self.n})"
        return f"{'PASS' if self.passed else 'FAIL'}({self.n})"


@dataclass
class SupercuspidalityReport:
    datum: dict
    verdicts: list[Verdict]
    n_max: int
    caveat: str = "necessary evidence up to n_max, not a proof"

    @property
    def overall(self) -> str:
        if any(v.passed is False for v in self.verdicts):
            return "FAIL"
        if any(v.passed is None for v in self.verdicts):
            return "PARTIAL"
        return "PASS"

    def verdict(self, n: int) -> Verdict:
        return next(v for v in self.verdicts if v.n == n)

    def to_json(self) -> dict:
        out = {"datum": self.datum, "n_max": self.n_max, "overall": self.overall, "caveat": self.caveat,
               "verdicts": []}
        for v in self.verdicts:
            item = {"n": v.n, "verdict": v.label, "checked_cosets": v.checked_cosets,
                    "total_cosets": v.total_cosets, "conjugations": v.conjugations}
            if v.witness is not None:
                item["witness"] = {"parabolic": v.witness.parabolic,
                                   "g": [[list(x) for x in v.witness.g[i * 2:(i + 1) * 2]] for i in range(2)]
                                   if len(v.witness.g) == 4 else [list(x) for x in v.witness.g],
                                   "intersection_size": v.witness.intersection_size}
            out["verdicts"].append(item)
        return out


DEFAULT_BUDGET = 5_000_000


def _check_degree(d: MonomialDatumModel, n: int, n_cap: int, budget: int) -> Verdict:
    chi = extend_scalars_character(d, n, n_cap)
    model = chi.model
    mat = model.mat
    total = 0
    pars = standard_parabolic_list(model.group)
    for par in pars:
        total += coset_count(model, par)
    verdict = Verdict(n, True, total_cosets=total, field_label=f"F_{d.q}^{n}")
    cost = 0
    for par in pars:
        radical = list(radical_elements(model, par))
        for g in coset_representatives(model, par):
            gi = mat.inv(g)
            found = False
            size = 0
            for u in radical:
                h = mat.mul(mat.mul(g, u), gi)
                cost += 1
                if d.contains(model, h):
                    size += 1
                    if chi(h):
                        found = True
                        break
            verdict.checked_cosets += 1
            if not found:
                verdict.passed = False
                verdict.witness = Witness(par.tag, g, size)
                verdict.conjugations = cost
                return verdict
            if cost > budget:
                verdict.passed = None
                verdict.conjugations = cost
                return verdict
    verdict.conjugations = cost
    return verdict


def check_geometric_supercuspidality(d: MonomialDatumModel, n_max: int = 2,
                                     budget: int = DEFAULT_BUDGET, stop_at_fail: bool = False) -> SupercuspidalityReport:
    """Per-degree PASS/FAIL for n = 1..n_max, with witnesses for failures."""
    if n_max < 1:
        raise MGSError("n_max must be >= 1")
    if d.group == "SL2" and (n_max > 3 or d.q ** n_max > 125 or d.m > 2):
        raise MGSError("cost guard: SL2 checks need n_max <= 3, q^n_max <= 125 and m <= 2")
    if d.group == "SL3" and d.q ** n_max > 4:
        raise MGSError("cost guard: SL3 checks need q^n_max <= 4")
    verdicts = []
    for n in range(1, n_max + 1):
        v = _check_degree(d, n, n_max, budget)
        verdicts.append(v)
        if stop_at_fail and v.passed is False:
            break
    return SupercuspidalityReport(dict(d.description), verdicts, n_max)


def intersection_points(d: MonomialDatumModel, n: int, g, par_tag: str = "B") -> list:
    """g N g^{-1} cap H(F_{q^n}) for the named standard radical."""
    model = d.model(n)
    par = next(p for p in standard_parabolic_list(d.group) if p.tag == par_tag)
    mat = model.mat
    gi = mat.inv(g)
    out = []
    for u in radical_elements(model, par):
        h = mat.mul(mat.mul(g, u), gi)
        if d.contains(model, h):
            out.append(h)
    return out


def borel_contains(model: TruncatedLoopGroupModel, g, B_const) -> bool:
    """Whether the constant matrix B preserves the line g e_1 (mod t)."""
    F = model.field
    g0 = model.mat.reduce(g)
    v = (g0[0], g0[2])
    Bv = (F.add(F.mul(B_const[0], v[0]), F.mul(B_const[1], v[1])),
          F.add(F.mul(B_const[2], v[0]), F.mul(B_const[3], v[1])))
    # Bv parallel to v
    return F.sub(F.mul(Bv[0], v[1]), F.mul(Bv[1], v[0])) == 0
