"""Combinatorial shadows of geometric Satake.

q-Kostant partitions, Lusztig's q-analogue of weight multiplicity,
Hall-Littlewood polynomials and the Kato-Lusztig expansion of a Weyl
character in the Hall-Littlewood basis.  Polynomials in q (or t) are
``QPolynomial`` objects; "weight polynomials" are dicts weight -> QPolynomial.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .qpoly import ONE, ZERO, QPolynomial
from .repcomb import _dominant_weights_below, character_of, weyl_dim
from .rootdata import RootDatum, Weight, dominant_with_sign, matvec, rho

Q = QPolynomial.q_power(1)


class GrassmannError(ValueError):
    pass


def _require_dominant(lam):
    if any(x < 0 for x in lam):
        raise GrassmannError(f"{tuple(lam)} is not dominant")


@functools.lru_cache(maxsize=256)
def _kostant_table(datum: RootDatum, box: tuple[int, ...]) -> dict[tuple[int, ...], QPolynomial]:
    # coin change: one unbounded pass per positive root, lattice points in the box
    import itertools

    points = sorted(itertools.product(*[range(b + 1) for b in box]), key=sum)
    table = {p: ZERO for p in points}
    table[(0,) * len(box)] = ONE
    for alpha in datum.positive_roots:
        for p in points:
            prev = tuple(a - b for a, b in zip(p, alpha))
            if min(prev) >= 0:
                t = table[prev]
                if not t.is_zero():
                    table[p] = table[p] + t * Q
    return table


def q_kostant(datum: RootDatum, nu: Sequence[int]) -> QPolynomial:
    """Sum of q^(number of parts) over ways to write ``nu`` (simple-root coordinates)
    as a sum of positive roots."""
    nu = tuple(int(x) for x in nu)
    if len(nu) != datum.rank:
        raise GrassmannError("rank mismatch")
    if any(x < 0 for x in nu):
        return ZERO
    return _kostant_table(datum, nu)[nu]


def _as_root_vector(datum: RootDatum, w: Sequence[int]) -> tuple[int, ...] | None:
    c = datum.weight_to_root(w)
    if any(x.denominator != 1 for x in c):
        return None
    return tuple(int(x) for x in c)


@functools.lru_cache(maxsize=8192)
def _lusztig(datum: RootDatum, lam: Weight, mu: Weight) -> QPolynomial:
    diff = _as_root_vector(datum, tuple(a - b for a, b in zip(lam, mu)))
    if diff is None or min(diff) < 0:
        return ZERO
    r = rho(datum)
    top = tuple(a + b for a, b in zip(lam, r))
    base = tuple(a + b for a, b in zip(mu, r))
    table = _kostant_table(datum, diff)
    total = ZERO
    for m, length in datum.weyl_group:
        nu = _as_root_vector(datum, tuple(a - b for a, b in zip(matvec(m, top), base)))
        # w(lam+rho) <= lam+rho, so nu fits in the box of lam - mu when nonnegative
        if nu is None or min(nu) < 0:
            continue
        val = table[nu]
        if not val.is_zero():
            total = total + (val if length % 2 == 0 else -val)
    return total


def lusztig_q_analog(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> QPolynomial:
    """m_lam^mu(q) = sum_w (-1)^l(w) P_q(w(lam+rho) - (mu+rho))."""
    lam, mu = tuple(lam), tuple(mu)
    _require_dominant(lam)
    _require_dominant(mu)
    return _lusztig(datum, lam, mu)


# ---------------------------------------------------------------- Hall-Littlewood


def _stabilizer_poincare(datum: RootDatum, mu: Weight) -> QPolynomial:
    total = ZERO
    for m, length in datum.weyl_group:
        if matvec(m, mu) == mu:
            total = total + QPolynomial.q_power(length)
    return total


@functools.lru_cache(maxsize=1024)
def hall_littlewood_chi(datum: RootDatum, mu: Weight) -> dict[Weight, QPolynomial]:
    """P_mu(t) in the basis of Weyl characters: {nu: coefficient in t}.

    Uses sum_w w(f / prod(1 - e^-a)) = A(e^rho f) / A(e^rho) with
    f = e^mu prod_{a>0} (1 - t e^-a), folding every term to the dominant chamber.
    """
    mu = tuple(mu)
    _require_dominant(mu)
    r = rho(datum)
    terms: dict[Weight, QPolynomial] = {tuple(a + b for a, b in zip(mu, r)): ONE}
    minus_t = QPolynomial.q_power(1, -1)
    for alpha in datum.positive_roots_weights:
        new = dict(terms)
        for w, c in terms.items():
            v = tuple(a - b for a, b in zip(w, alpha))
            new[v] = new.get(v, ZERO) + c * minus_t
        terms = {w: c for w, c in new.items() if not c.is_zero()}
    chi: dict[Weight, QPolynomial] = {}
    for w, c in terms.items():
        dom, sign = dominant_with_sign(datum, w)
        if any(x == 0 for x in dom):
            continue
        nu = tuple(x - 1 for x in dom)
        chi[nu] = chi.get(nu, ZERO) + (c if sign > 0 else -c)
    wmu = _stabilizer_poincare(datum, mu)
    out = {}
    for nu, c in chi.items():
        if not c.is_zero():
            out[nu] = c.divide_exact(wmu)
    return out


def chi_expansion_to_weights(datum: RootDatum, chi: dict[Weight, QPolynomial]) -> dict[Weight, QPolynomial]:
    out: dict[Weight, QPolynomial] = {}
    for nu, c in chi.items():
        for w, m in character_of(datum, nu).items():
            out[w] = out.get(w, ZERO) + c * m
    return {w: c for w, c in out.items() if not c.is_zero()}


def hall_littlewood(datum: RootDatum, mu: Sequence[int]) -> dict[Weight, QPolynomial]:
    """P_mu(t) as a Weyl-invariant weight polynomial {weight: coefficient in t}."""
    return chi_expansion_to_weights(datum, hall_littlewood_chi(datum, tuple(mu)))


def specialize_t(poly: dict[Weight, QPolynomial], t) -> dict[Weight, object]:
    out = {}
    for w, c in poly.items():
        v = c.evaluate(t)
        if v:
            out[w] = v
    return out


# ---------------------------------------------------------------- Kato-Lusztig


@dataclass(frozen=True)
class Convention:
    """How the q-analogue enters chi_lam = sum_mu K(lam, mu) P_mu(t).

    ``invert``: use m(t^{-1}) instead of m(t).  ``twist``: multiply by
    t^{<lam - mu, rho^vee>}.
    """

    invert: bool
    twist: bool

    def label(self) -> str:
        var = "t^-1" if self.invert else "t"
        return f"{var}, {'rho-twist' if self.twist else 'no twist'}"

    def apply(self, datum: RootDatum, lam: Weight, mu: Weight, m: QPolynomial) -> QPolynomial:
        if self.invert:
            m = m.invert_variable()
        if self.twist:
            m = m.shift(2 * height(datum, tuple(a - b for a, b in zip(lam, mu))))
        return m


CANDIDATE_CONVENTIONS = tuple(Convention(i, t) for i in (False, True) for t in (False, True))


def height(datum: RootDatum, w: Sequence[int]) -> int:
    """<w, rho^vee> for w in the root lattice."""
    c = _as_root_vector(datum, w)
    if c is None:
        raise GrassmannError("not in the root lattice")
    return sum(c)


@dataclass
class KatoReport:
    lam: Weight
    convention: Convention
    holds: bool
    diff: dict[Weight, QPolynomial] = field(default_factory=dict)


def dominant_below(datum: RootDatum, lam: Sequence[int]) -> list[Weight]:
    return _dominant_weights_below(datum, tuple(lam))


def verify_kato(datum: RootDatum, lam: Sequence[int], convention: Convention | None = None) -> KatoReport:
    """Check chi_lam == sum_mu K(lam,mu) P_mu(t) as weight polynomials."""
    lam = tuple(lam)
    _require_dominant(lam)
    if convention is None:
        convention = calibrated_convention()
    lhs = {w: QPolynomial.constant(m) for w, m in character_of(datum, lam).items()}
    rhs: dict[Weight, QPolynomial] = {}
    for mu in dominant_below(datum, lam):
        k = convention.apply(datum, lam, mu, lusztig_q_analog(datum, lam, mu))
        if k.is_zero():
            continue
        for w, c in hall_littlewood(datum, mu).items():
            rhs[w] = rhs.get(w, ZERO) + k * c
    diff = {}
    for w in set(lhs) | set(rhs):
        d = lhs.get(w, ZERO) - rhs.get(w, ZERO)
        if not d.is_zero():
            diff[w] = d
    return KatoReport(lam, convention, not diff, diff)


_CALIBRATION_CASES = (("A1", (1,)), ("A1", (2,)), ("A1", (4,)), ("A2", (1, 1)), ("A2", (3, 0)), ("A2", (2, 1)))


@functools.lru_cache(maxsize=1)
def calibrate() -> tuple[Convention, dict[str, bool]]:
    """Try every candidate convention on small A1/A2 cases; exactly one must survive."""
    from .rootdata import build_root_system

    results = {}
    survivors = []
    for conv in CANDIDATE_CONVENTIONS:
        ok = all(verify_kato(build_root_system(t), lam, conv).holds for t, lam in _CALIBRATION_CASES)
        results[conv.label()] = ok
        if ok:
            survivors.append(conv)
    if len(survivors) != 1:
        raise GrassmannError(f"calibration did not single out a convention: {results}")
    return survivors[0], results


def calibrated_convention() -> Convention:
    return calibrate()[0]


# ---------------------------------------------------------------- d(lambda), IC stalks


def d_lambda(datum: RootDatum, lam: Sequence[int]) -> int:
    """<lam, 2 rho> for a dominant coweight ``lam`` of ``datum``."""
    _require_dominant(lam)
    if len(lam) != datum.rank:
        raise GrassmannError("rank mismatch")
    two_rho = [sum(r[i] for r in datum.positive_roots) for i in range(datum.rank)]
    return sum(a * b for a, b in zip(two_rho, lam))


@dataclass(frozen=True)
class StalkTrace:
    value: int | Fraction
    in_closure: bool
    polynomial: QPolynomial


def ic_stalk_polynomial(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> QPolynomial:
    """q^{<lam-mu, rho^vee>} m_lam^mu(q^{-1}); a polynomial in q with value 1 at lam = mu."""
    lam, mu = tuple(lam), tuple(mu)
    m = lusztig_q_analog(datum, lam, mu)
    if m.is_zero():
        return ZERO
    return m.invert_variable().shift(2 * height(datum, tuple(a - b for a, b in zip(lam, mu))))


def ic_stalk_trace(datum: RootDatum, lam: Sequence[int], mu: Sequence[int], q) -> StalkTrace:
    """Frobenius trace on the stalk of IC_lam at the point t^mu (datum = dual group).

    Equal to 1 on the open stratum and for minuscule lam; its value at q = 1
    is the weight multiplicity.
    """
    lam, mu = tuple(lam), tuple(mu)
    _require_dominant(lam)
    _require_dominant(mu)
    diff = _as_root_vector(datum, tuple(a - b for a, b in zip(lam, mu)))
    if diff is None or min(diff) < 0:
        return StalkTrace(0, False, ZERO)
    poly = ic_stalk_polynomial(datum, lam, mu)
    return StalkTrace(poly.evaluate(q), True, poly)


def q_analog_table(datum: RootDatum, lam: Sequence[int]) -> list[dict]:
    lam = tuple(lam)
    _require_dominant(lam)
    rows = []
    for mu in dominant_below(datum, lam):
        m = lusztig_q_analog(datum, lam, mu)
        if m.is_zero():
            continue
        rows.append({"lambda": list(lam), "mu": list(mu), "coefficients": m.to_json()})
    return rows


def dims_up_to(datum: RootDatum, bound: int) -> list[Weight]:
    """Dominant weights with weyl_dim <= bound (box search grown until empty)."""
    import itertools

    n = datum.rank
    out = []
    k = 0
    while True:
        shell = [lam for lam in itertools.product(range(k + 1), repeat=n) if max(lam, default=0) == k]
        hits = [lam for lam in shell if weyl_dim(datum, lam) <= bound]
        if not hits and k > 0:
            break
        out.extend(hits)
        k += 1
    return sorted(out, key=lambda l: (weyl_dim(datum, l), l))
