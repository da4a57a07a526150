"""Brute-force checks of the base-change identities on a finite Frobenius model.

The model is J = {[[1+at, x+yt], [zt, 1+dt]]} inside SL2(F_{q^L}[t]/t^2),
with sigma the entrywise q-power map.  The character on J^{sigma^n} (points
over F_{q^n}) is psi(Tr_{F_{q^n}/F_p}(x + z)), stored as an exponent in Z/p.

The twisted system is never built as a semidirect product: its two
relations are used in the equivalent forms

    c^{-1} sigma^l(c) = gamma^a,        delta = c gamma^b sigma^j(c)^{-1}.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .loopgroup import TruncatedLoopGroupModel

MAX_MODEL_SIZE = 10 ** 7


class BaseChangeError(ValueError):
    pass


class FrobeniusModel:
    def __init__(self, q: int = 2, L: int = 4, form_support=("topright", "bottomleft")):
        self.q, self.L = q, L
        self.model = TruncatedLoopGroupModel("SL2", q, L, 2, L)
        if q ** (4 * L) > MAX_MODEL_SIZE:
            raise BaseChangeError("model too large to enumerate")
        self.F = self.model.field
        self.mat = self.model.mat
        self.e = self.model.e
        self.form_support = tuple(form_support)
        self._points = None
        self._lang: dict[int, dict] = {}

    # -- structure ----------------------------------------------------------

    def sigma(self, g, k: int = 1):
        """Entrywise q^k-power map."""
        return self.mat.frob(g, self.e * k)

    def contains(self, g) -> bool:
        a, b, c, d = g
        return a[0] == 1 and d[0] == 1 and c[0] == 0 and self.mat.is_special(g)

    def points(self) -> list:
        if self._points is None:
            F = self.F
            out = []
            for a, x, y, z in itertools.product(self.F.subfield(self.e * self.L), repeat=4):
                d = F.sub(F.mul(x, z), a)
                out.append(((1, a), (x, y), (0, z), (1, d)))
            self._points = out
        return self._points

    def fixed_points(self, n: int) -> list:
        """J^{sigma^n}: the points over F_{q^n}."""
        if self.L % n:
            raise BaseChangeError("n must divide L")
        sub = self.F.subfield(self.e * n)
        F = self.F
        return [((1, a), (x, y), (0, z), (1, F.sub(F.mul(x, z), a)))
                for a, x, y, z in itertools.product(sub, repeat=4)]

    def is_fixed(self, g, n: int) -> bool:
        return self.sigma(g, n) == g

    def form(self, g) -> int:
        F = self.F
        total = 0
        if "topright" in self.form_support:
            total = F.add(total, g[1][0])
        if "bottomleft" in self.form_support:
            total = F.add(total, g[2][1])
        return total

    def chi(self, n: int, g) -> int:
        """chi_n(g) as an exponent in Z/p, for g in J^{sigma^n}."""
        if not self.contains(g):
            raise BaseChangeError("element outside J")
        if not self.is_fixed(g, n):
            raise BaseChangeError(f"element is not fixed by sigma^{n}")
        return self.F.absolute_trace(self.form(g), self.e * n)

    def lang_map(self, l: int) -> dict:
        """value c^{-1} sigma^l(c) -> list of c (cached)."""
        if l not in self._lang:
            table: dict = {}
            mat = self.mat
            for c in self.points():
                v = mat.mul(mat.inv(c), self.sigma(c, l))
                table.setdefault(v, []).append(c)
            self._lang[l] = table
        return self._lang[l]

    def describe(self) -> dict:
        return {"group": "SL2", "q": self.q, "L": self.L, "m": 2, "J": "epipelagic-style",
                "form_support": list(self.form_support), "order": self.q ** (4 * self.L)}


# ---------------------------------------------------------------- Lang


@dataclass
class LangReport:
    l: int
    surjective: bool
    image_size: int
    domain_size: int
    defect: int
    degenerate: bool
    caveat: str = "finite shadow: only the enumerated points are tested"


def lang_check(fm: FrobeniusModel, l: int) -> LangReport:
    """Image of g -> sigma^l(g) g^{-1} on J(F_{q^L})."""
    mat = fm.mat
    image = set()
    pts = fm.points()
    for g in pts:
        image.add(mat.mul(fm.sigma(g, l), mat.inv(g)))
    degenerate = l % fm.L == 0
    return LangReport(l, len(image) == len(pts), len(image), len(pts), len(pts) - len(image), degenerate)


def additive_lang_check(q: int, L: int, l: int = 1) -> LangReport:
    """The same map on (F_{q^L}, +): x -> sigma^l(x) - x."""
    model = TruncatedLoopGroupModel("SL2", q, L, 1, L)
    F, e = model.field, model.e
    pts = F.subfield(e * L)
    image = {F.sub(F.frob(x, e * l), x) for x in pts}
    return LangReport(l, len(image) == len(pts), len(image), len(pts), len(pts) - len(image), l % L == 0)


def trace_kernel_size(q: int, L: int) -> int:
    model = TruncatedLoopGroupModel("SL2", q, L, 1, L)
    F, e = model.field, model.e
    return sum(1 for x in F.subfield(e * L) if F.trace(x, e * L, e) == 0)


# ---------------------------------------------------------------- Kottwitz system


@dataclass(frozen=True)
class KottwitzSolution:
    gamma: tuple
    delta: tuple
    c: tuple
    l: int
    j: int
    a: int
    b: int


@dataclass
class SolveReport:
    solutions: list[KottwitzSolution]
    complete: bool
    searched: int
    rejected_not_fixed: int = 0


def _check_params(fm: FrobeniusModel, l: int, j: int, a: int, b: int):
    if a * l - b * j != 1:
        raise BaseChangeError("need a*l - b*j = 1")
    if l < 1 or fm.L % l:
        raise BaseChangeError("l must divide L")


def solve_kottwitz(fm: FrobeniusModel, gamma, l: int, j: int, a: int, b: int,
                   budget: int | None = None) -> SolveReport:
    """All c in J with c^{-1} sigma^l(c) = gamma^a, and the resulting delta."""
    _check_params(fm, l, j, a, b)
    if not fm.contains(gamma) or not fm.is_fixed(gamma, 1):
        raise BaseChangeError("gamma must be a sigma-fixed point of J")
    mat = fm.mat
    target = mat.power(gamma, a)
    gb = mat.power(gamma, b)
    pts = fm.points()
    complete = budget is None or budget >= len(pts)
    if complete:
        cs = fm.lang_map(l).get(target, [])
        searched = len(pts)
    else:
        cs = [c for c in pts[:budget] if mat.mul(mat.inv(c), fm.sigma(c, l)) == target]
        searched = budget
    sols, rejected = [], 0
    for c in cs:
        delta = mat.mul(mat.mul(c, gb), mat.inv(fm.sigma(c, j)))
        if not fm.is_fixed(delta, l):
            rejected += 1
            continue
        sols.append(KottwitzSolution(gamma, delta, c, l, j, a, b))
    return SolveReport(sols, complete, searched, rejected)


def satisfies_keq(fm: FrobeniusModel, sol: KottwitzSolution) -> bool:
    mat = fm.mat
    one = mat.mul(mat.inv(sol.c), fm.sigma(sol.c, sol.l)) == mat.power(sol.gamma, sol.a)
    two = mat.mul(mat.mul(sol.c, mat.power(sol.gamma, sol.b)), mat.inv(fm.sigma(sol.c, sol.j))) == sol.delta
    return one and two


def verify_commutator_identity(fm: FrobeniusModel, sol: KottwitzSolution) -> bool:
    """chi(gamma) == chi_E(delta), exactly."""
    return fm.chi(1, sol.gamma) == fm.chi(sol.l, sol.delta)


def norm(fm: FrobeniusModel, delta, l: int, j: int = 1):
    """delta theta(delta) ... theta^{l-1}(delta) with theta = sigma^j."""
    mat = fm.mat
    out = mat.identity
    for i in range(l):
        out = mat.mul(out, fm.sigma(delta, i * j))
    return out


def verify_norm_fact(fm: FrobeniusModel, sol: KottwitzSolution) -> bool:
    mat = fm.mat
    return norm(fm, sol.delta, sol.l, sol.j) == mat.conj(sol.c, sol.gamma)


def twisted_conjugate(fm: FrobeniusModel, delta, y, j: int):
    """y^{-1} delta theta(y)."""
    mat = fm.mat
    return mat.mul(mat.mul(mat.inv(y), delta), fm.sigma(y, j))


def twisted_class(fm: FrobeniusModel, delta, l: int, j: int) -> set:
    return {twisted_conjugate(fm, delta, y, j) for y in fm.fixed_points(l)}


# ---------------------------------------------------------------- experiments


@dataclass
class ExperimentReport:
    params: dict
    gammas: int = 0
    solutions: int = 0
    keq_failures: int = 0
    character_failures: int = 0
    norm_failures: int = 0
    class_failures: int = 0
    control_trials: int = 0
    control_character_failures: int = 0
    control_norm_failures: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.solutions > 0 and not (self.keq_failures or self.character_failures
                                           or self.norm_failures or self.class_failures)

    @property
    def control_registered(self) -> bool:
        return self.control_trials > 0 and (self.control_character_failures + self.control_norm_failures) > 0

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        out["control_registered"] = self.control_registered
        return out


def run_experiment(q: int = 2, L: int = 4, l: int = 2, j: int = 1, a: int = 1, b: int = 1,
                   control_trials: int = 200, seed: int = 0) -> ExperimentReport:
    """Solve the twisted system for every sigma-fixed gamma and verify both identities.

    The control perturbs c to c*g for random g in J, recomputes delta from the
    second relation and counts how often the identities then break.
    """
    fm = FrobeniusModel(q, L)
    _check_params(fm, l, j, a, b)
    report = ExperimentReport({"q": q, "L": L, "l": l, "j": j, "a": a, "b": b, "model": fm.describe()})
    if l % L == 0:
        report.notes.append("l = L: sigma^l is trivial on the model, so the control cannot register failures")
    mat = fm.mat
    rng = random.Random(seed)
    all_solutions = []
    for gamma in fm.fixed_points(1):
        report.gammas += 1
        res = solve_kottwitz(fm, gamma, l, j, a, b)
        deltas = set()
        for sol in res.solutions:
            report.solutions += 1
            all_solutions.append(sol)
            if not satisfies_keq(fm, sol):
                report.keq_failures += 1
            if not verify_commutator_identity(fm, sol):
                report.character_failures += 1
            if not verify_norm_fact(fm, sol):
                report.norm_failures += 1
            deltas.add(sol.delta)
        if deltas:
            # found deltas form exactly one twisted class
            cls = twisted_class(fm, next(iter(deltas)), l, j)
            if cls != deltas:
                report.class_failures += 1
    pts = fm.points()
    for _ in range(control_trials if all_solutions else 0):
        sol = rng.choice(all_solutions)
        g = rng.choice(pts)
        c2 = mat.mul(sol.c, g)
        delta2 = mat.mul(mat.mul(c2, mat.power(sol.gamma, b)), mat.inv(fm.sigma(c2, j)))
        report.control_trials += 1
        if not fm.is_fixed(delta2, l) or fm.chi(1, sol.gamma) != _chi_any(fm, l, delta2):
            report.control_character_failures += 1
        if norm(fm, delta2, l, j) != mat.conj(c2, sol.gamma):
            report.control_norm_failures += 1
    return report


def _chi_any(fm: FrobeniusModel, n: int, g):
    """chi_n if g is sigma^n-fixed, else None (a failed control)."""
    if not fm.is_fixed(g, n):
        return None
    return fm.chi(n, g)


def chi_twisted_invariance(fm: FrobeniusModel, delta, l: int, j: int, samples: int = 200, seed: int = 0) -> bool:
    rng = random.Random(seed)
    ys = fm.fixed_points(l)
    base = fm.chi(l, delta)
    for _ in range(samples):
        y = rng.choice(ys)
        if fm.chi(l, twisted_conjugate(fm, delta, y, j)) != base:
            return False
    return True
