"""Highest-weight representation combinatorics.

Weight multiplicities come from Freudenthal's recursion run over dominant
weights only (the table is extended to the full support by Weyl orbits);
the Weyl dimension formula is kept as an independent cross-check.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rootdata import (
    RootDatum,
    RootDataError,
    Weight,
    dominant_representative,
    dominant_with_sign,
    pair_coroot,
    pairing,
    rho,
    root_lattice_class,
    weyl_orbit,
)


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class HighestWeightRep:
    datum: RootDatum
    highest: Weight
    mult: Mapping[Weight, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return sum(self.mult.values())

    @property
    def weights(self) -> list[Weight]:
        return sorted(self.mult)

    def dominant_weights(self) -> list[Weight]:
        return sorted(w for w in self.mult if all(x >= 0 for x in w))


@dataclass(frozen=True)
class RepSum:
    """Direct sum of irreducibles, one entry per summand (with repetition)."""

    datum: RootDatum
    summands: tuple[Weight, ...]

    def __post_init__(self):
        if not self.summands:
            raise RepresentationError("a RepSum needs at least one summand")

    def weight_support(self) -> set[Weight]:
        out: set[Weight] = set()
        for lam in self.summands:
            out.update(weight_multiplicities(self.datum, lam).mult)
        return out

    def character(self) -> Counter:
        total: Counter = Counter()
        for lam in self.summands:
            total.update(weight_multiplicities(self.datum, lam).mult)
        return total


def _require_dominant(lam: Sequence[int]):
    if any(x < 0 for x in lam):
        raise RepresentationError(f"weight {tuple(lam)} is not dominant")


def weyl_dim(datum: RootDatum, lam: Sequence[int]) -> int:
    """Weyl dimension formula: prod over positive coroots of <lam+rho, a^v>/<rho, a^v>."""
    _require_dominant(lam)
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for cv in datum.positive_coroots_simple:
        num *= Fraction(pair_coroot(shifted, cv), sum(cv))
    if num.denominator != 1:
        raise RepresentationError("Weyl dimension formula gave a non-integer")
    return int(num)


def _dominant_weights_below(datum: RootDatum, lam: Weight) -> list[Weight]:
    """Dominant mu <= lam, ordered by increasing depth lam - mu."""
    n = datum.rank
    bound = datum.weight_to_root(lam)
    if any(b < 0 for b in bound):
        raise RepresentationError("dominant weight with negative root coordinates")
    out = []
    ranges = [range(int(b) + 1) for b in bound]
    for c in itertools.product(*ranges):
        mu = tuple(l - d for l, d in zip(lam, datum.root_to_weight(c)))
        if all(x >= 0 for x in mu):
            out.append((sum(c), c, mu))
    out.sort()
    return [mu for _, _, mu in out]


@functools.lru_cache(maxsize=4096)
def _dominant_multiplicities(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    rho_w = rho(datum)
    top = tuple(a + b for a, b in zip(lam, rho_w))
    top_norm = datum.inner_scaled(top, top)
    mults: dict[Weight, int] = {}
    roots = datum.positive_roots_weights
    dom_of: dict[Weight, Weight] = {}
    for mu in _dominant_weights_below(datum, lam):
        if mu == lam:
            mults[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho_w))
        denom = top_norm - datum.inner_scaled(mr, mr)
        total = 0
        for alpha in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                dom = dom_of.get(nu)
                if dom is None:
                    dom = dom_of[nu] = dominant_representative(datum, nu)[0]
                m = mults.get(dom, 0)
                if m == 0:
                    break
                total += m * datum.inner_scaled(nu, alpha)
                k += 1
        value = Fraction(2 * total, denom)
        if value.denominator != 1 or value < 0:
            raise RepresentationError(f"Freudenthal produced {value} at {mu}")
        if value:
            mults[mu] = int(value)
    return mults


def weight_multiplicities(datum: RootDatum, lam: Sequence[int]) -> HighestWeightRep:
    lam = tuple(lam)
    _require_dominant(lam)
    mult: dict[Weight, int] = {}
    for mu, m in _dominant_multiplicities(datum, lam).items():
        for nu in weyl_orbit(datum, mu):
            mult[nu] = m
    return HighestWeightRep(datum, lam, mult)


def character_of(datum: RootDatum, lam: Sequence[int]) -> Counter:
    return Counter(weight_multiplicities(datum, lam).mult)


def convolve(a: Mapping[Weight, int], b: Mapping[Weight, int]) -> Counter:
    out: Counter = Counter()
    for u, mu in a.items():
        for v, mv in b.items():
            out[tuple(x + y for x, y in zip(u, v))] += mu * mv
    return out


def tensor_decompose(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> Counter:
    """Brauer-Klimyk: V_lam (x) V_mu as a multiset of highest weights."""
    _require_dominant(lam)
    _require_dominant(mu)
    # iterate over the weights of the smaller factor
    if weyl_dim(datum, lam) < weyl_dim(datum, mu):
        lam, mu = mu, lam
    shift = tuple(x + 1 for x in mu)
    out: Counter = Counter()
    for nu, m in weight_multiplicities(datum, lam).mult.items():
        v = tuple(a + b for a, b in zip(nu, shift))
        if any(x == 0 for x in v):
            continue
        dom, sign = dominant_with_sign(datum, v)
        if any(x == 0 for x in dom):
            continue
        out[tuple(x - 1 for x in dom)] += sign * m
    result = Counter({k: v for k, v in out.items() if v})
    if any(v < 0 for v in result.values()):
        raise RepresentationError("negative multiplicity in Brauer-Klimyk sum")
    return result


def central_character_classes(datum: RootDatum) -> dict[tuple, Weight]:
    """Classes of weight lattice / root lattice, each with a smallest dominant representative."""
    classes: dict[tuple, Weight] = {root_lattice_class(datum, (0,) * datum.rank): (0,) * datum.rank}
    n = datum.rank
    fundamentals = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    frontier = list(classes.values())
    while frontier:
        new = []
        for w in frontier:
            for f in fundamentals:
                v = tuple(a + b for a, b in zip(w, f))
                key = root_lattice_class(datum, v)
                if key not in classes:
                    classes[key] = v
                    new.append(v)
        frontier = new
    return classes


def is_minuscule(datum: RootDatum, lam: Sequence[int]) -> bool:
    """Weyl group transitive on the weights of V_lam."""
    lam = tuple(lam)
    support = weight_multiplicities(datum, lam).mult
    return len(weyl_orbit(datum, lam)) == len(support)


def minuscule_representations(datum: RootDatum) -> list[Weight]:
    """Nonzero minuscule fundamental weights, in index order."""
    n = datum.rank
    out = []
    for i in range(n):
        w = tuple(int(i == j) for j in range(n))
        # a pairing >= 2 with some coroot puts w - alpha (shorter) among the weights
        if any(pair_coroot(w, cv) > 1 for cv in datum.positive_coroots_simple):
            continue
        if is_minuscule(datum, w):
            out.append(w)
    return out


def max_coroot_pairing(rep: RepSum) -> int:
    best = 0
    for mu in rep.weight_support():
        for cv in rep.datum.positive_coroots_simple:
            best = max(best, abs(pair_coroot(mu, cv)))
    return best


def weights_span(rep: RepSum) -> bool:
    """Whether the weights of ``rep`` span the rational weight space."""
    import sympy

    rows = sorted(rep.weight_support())
    return sympy.Matrix(rows).rank() == rep.datum.rank


@dataclass(frozen=True)
class FaithfulRepReport:
    rep: RepSum | None
    max_pairing: int | None
    covered_classes: int
    center_order: int
    spans: bool
    ok: bool
    reason: str = ""


def faithful_low_pairing_rep(datum: RootDatum, p: int) -> FaithfulRepReport:
    """A faithful sum of irreducibles whose coroot pairings are small.

    For odd p: one summand per central character (adjoint, or the 7-dim
    representation for G2, on the trivial character; the minuscule
    representation on the others), all pairings <= 2.  For p = 2: the sum
    of all nonzero minuscule representations, which exists only if the
    center is nontrivial.
    """
    import sympy

    if not sympy.isprime(p):
        raise RepresentationError(f"p={p} is not prime")
    classes = central_character_classes(datum)
    zero = (0,) * datum.rank
    minus = minuscule_representations(datum)
    if p == 2:
        if len(classes) == 1:
            return FaithfulRepReport(None, None, 0, 1, False, False,
                                     f"{datum.name} has trivial center; no minuscule "
                                     "representation exists for p = 2")
        summands = tuple(minus)
    else:
        if datum.cartan is not None and datum.cartan.family == "G":
            trivial = (1, 0)
        else:
            trivial = datum.highest_root_weight
        summands = (trivial,) + tuple(minus)
    rep = RepSum(datum, summands)
    covered = {root_lattice_class(datum, lam) for lam in summands}
    if p == 2:
        covered.add(root_lattice_class(datum, zero))
    bound = max_coroot_pairing(rep)
    spans = weights_span(rep)
    ok = covered == set(classes) and spans and bound <= 2 and (p > 2 or bound <= 1)
    return FaithfulRepReport(rep, bound, len(covered), len(classes), spans, ok,
                             "" if ok else "construction failed its own checks")


def brace_W(rep: RepSum, lam: Sequence[int]) -> Fraction:
    """{W} for a dominant coweight: max over weights mu of V of -<mu, lam>."""
    if any(x < 0 for x in lam):
        raise RepresentationError("brace_W expects a dominant coweight")
    if all(x == 0 for x in lam):
        return Fraction(0)
    return max(-pairing(rep.datum, mu, lam) for mu in rep.weight_support())


def mults_to_json(rep: HighestWeightRep) -> dict:
    return {
        "type": rep.datum.name,
        "highest": list(rep.highest),
        "dim": rep.dim,
        "weights": [{"weight": list(w), "mult": m} for w, m in sorted(rep.mult.items())],
    }
