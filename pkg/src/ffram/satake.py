"""Satake parameters, Hecke traces and the amplification engine.

A ``SatakeParameter`` lives on the dual side: ``datum`` is the root datum of
the dual group and ``values[i]`` is the value of the parameter on the i-th
fundamental weight, so t^mu = prod values_i ** mu_i.  The principal parameter
q^{<rho, mu>} is additionally carried exactly as powers of v = q^{1/2}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .grassmann import d_lambda
from .qpoly import QPolynomial
from .repcomb import weight_multiplicities, weyl_dim
from .rootdata import RootDatum, Weight, _inverse, matvec, rho_vee_doubled

DEFAULT_TOL = 1e-9


class SatakeError(ValueError):
    pass


@dataclass(frozen=True)
class SatakeParameter:
    datum: RootDatum
    values: tuple
    # (q, v-exponents) when every value is an exact power of sqrt(q)
    principal: tuple | None = None

    def __post_init__(self):
        if len(self.values) != self.datum.rank:
            raise SatakeError("one value per fundamental weight is required")
        if any(v == 0 for v in self.values):
            raise SatakeError("Satake parameter values must be nonzero")

    def evaluate(self, mu: Sequence[int]):
        """t^mu."""
        out = 1
        for v, m in zip(self.values, mu):
            if m:
                out = out * _power(v, m)
        return out

    def inverse(self) -> "SatakeParameter":
        vals = tuple(_power(v, -1) for v in self.values)
        pr = None
        if self.principal:
            q, e = self.principal
            pr = (q, tuple(-x for x in e))
        return SatakeParameter(self.datum, vals, pr)

    def to_json(self) -> dict:
        return {
            "type": self.datum.name,
            "rank": self.datum.rank,
            "values": [[complex(v).real, complex(v).imag] for v in self.values],
        }


def _power(v, m: int):
    if isinstance(v, int):
        return Fraction(v) ** m
    return v ** m


def parameter_from_json(datum: RootDatum, obj: dict) -> SatakeParameter:
    vals = tuple(complex(re, im) for re, im in obj["values"])
    return SatakeParameter(datum, vals)


def principal_parameter(datum: RootDatum, q) -> SatakeParameter:
    """The parameter with t^mu = q^{<rho, mu>}; exact in sqrt(q)."""
    if q <= 1:
        raise SatakeError("principal_parameter needs q > 1")
    exps = rho_vee_doubled(datum)  # v-exponent of t^{omega_i}
    sq = math.sqrt(q)
    return SatakeParameter(datum, tuple(sq ** e for e in exps), (q, exps))


def trace_polynomial(t: SatakeParameter, lam: Sequence[int]) -> QPolynomial:
    """tr(t | V_lam) as a Laurent polynomial in v, for exact principal-type parameters."""
    if t.principal is None:
        raise SatakeError("parameter has no exact q-power form")
    _, exps = t.principal
    coeffs: dict[int, int] = {}
    for mu, m in weight_multiplicities(t.datum, lam).mult.items():
        e = sum(a * b for a, b in zip(mu, exps))
        coeffs[e] = coeffs.get(e, 0) + m
    return QPolynomial(coeffs)


def tr_lambda(t: SatakeParameter, lam: Sequence[int]):
    """sum_mu mult_lam(mu) t^mu; exact for exact values or principal parameters."""
    lam = tuple(lam)
    if any(x < 0 for x in lam):
        raise SatakeError(f"{lam} is not dominant")
    if t.principal is not None:
        return trace_polynomial(t, lam).evaluate(t.principal[0])
    total = 0
    for mu, m in weight_multiplicities(t.datum, lam).mult.items():
        total = total + m * t.evaluate(mu)
    return total


def eigenvalues(t: SatakeParameter, lam: Sequence[int]) -> list:
    """The multiset {t^mu} over weights of V_lam, with multiplicity."""
    out = []
    for mu, m in sorted(weight_multiplicities(t.datum, lam).mult.items()):
        out.extend([t.evaluate(mu)] * m)
    return out


def is_tempered(t: SatakeParameter, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise SatakeError("tol must be positive")
    return all(abs(abs(complex(v)) - 1) <= tol for v in t.values)


def base_change(t: SatakeParameter, n: int) -> SatakeParameter:
    """Pointwise n-th power."""
    if n < 1:
        raise SatakeError("base change degree must be >= 1")
    vals = tuple(_power(v, n) for v in t.values)
    pr = None
    if t.principal:
        q, e = t.principal
        pr = (q, tuple(n * x for x in e))
    return SatakeParameter(t.datum, vals, pr)


def weyl_act(t: SatakeParameter, m) -> SatakeParameter:
    """(w t)^mu = t^{w^{-1} mu}, with ``m`` a Weyl matrix on weight coordinates."""
    inv = _inverse(m)
    n = t.datum.rank
    vals = []
    for i in range(n):
        col = tuple(int(inv[k][i]) for k in range(n))
        vals.append(t.evaluate(col))
    return SatakeParameter(t.datum, tuple(vals))


def dual_weight(datum: RootDatum, lam: Sequence[int]) -> Weight:
    """lam* = -w0 lam."""
    return tuple(-x for x in matvec(datum.longest_element, lam))


def leading_term(t: SatakeParameter, lam: Sequence[int]) -> tuple[Fraction, int]:
    """(top q-power, its coefficient) of tr_lam at a principal parameter."""
    poly = trace_polynomial(t, lam)
    top = poly.max_exponent()
    return Fraction(top, 2), poly.coefficients[top]


def expected_leading_power(datum: RootDatum, lam: Sequence[int]) -> Fraction:
    """d(lam)/2, with lam read as a coweight of the group dual to ``datum``."""
    return Fraction(d_lambda(datum.dual(), lam), 2)


# ---------------------------------------------------------------- amplification


@dataclass
class TraceSequence:
    entries: tuple  # a_1, ..., a_N
    dim_V: int
    base: object = None

    def __post_init__(self):
        if self.dim_V < 1:
            raise SatakeError("dim_V must be positive")


def trace_sequence(t: SatakeParameter, lam: Sequence[int], length: int) -> TraceSequence:
    eig = eigenvalues(t, lam)
    entries = tuple(sum((e ** n for e in eig), 0) for n in range(1, length + 1))
    return TraceSequence(entries, len(eig), base=t)


def power_sums(eigs: Sequence, length: int) -> tuple:
    return tuple(sum((Fraction(e) ** n if isinstance(e, int) else e ** n for e in eigs), 0)
                 for n in range(1, length + 1))


@dataclass
class SpectralReport:
    radius: object  # Fraction when exact, float otherwise
    eigenvalues: list
    charpoly: list  # monic, highest degree first
    exact: bool
    residual: float = 0.0
    notes: list = field(default_factory=list)


def _newton_charpoly(p: Sequence, d: int) -> list:
    """Elementary symmetric e_0..e_d from power sums p_1..p_d."""
    e = [1]
    for k in range(1, d + 1):
        s = 0
        for i in range(1, k + 1):
            s = s + (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(s / k)
    return e


def _forward_power_sums(e: Sequence, length: int) -> list:
    """Power sums implied by elementary symmetric functions e_0..e_d."""
    d = len(e) - 1
    p = []
    for k in range(1, length + 1):
        s = 0
        for i in range(1, min(k - 1, d) + 1):
            s = s + (-1) ** (i - 1) * e[i] * p[k - i - 1]
        if k <= d:
            s = s + (-1) ** (k - 1) * k * e[k]
        p.append(s)
    return p


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def spectral_radius_from_traces(seq: TraceSequence, tol: float = DEFAULT_TOL) -> SpectralReport:
    """Recover the eigenvalue multiset and spectral radius from a_n = tr(t^n).

    Exact rational entries go through exact Newton identities, rational roots
    are extracted exactly and the rest are located numerically at high
    precision.  Float entries use Newton identities at high precision; roots closer than
    noise level are coalesced into one repeated root.
    """
    d = seq.dim_V
    a = list(seq.entries)
    if len(a) < d:
        raise SatakeError(f"need at least dim_V={d} power sums, got {len(a)}")
    exact = all(_is_exact(x) for x in a)
    if exact:
        a = [Fraction(x) for x in a]
        e = _newton_charpoly(a, d)
        implied = _forward_power_sums(e, len(a))
        if implied != a:
            raise SatakeError("inconsistent trace sequence: no degree-dim_V multiset reproduces it")
        charpoly = [(-1) ** k * e[k] for k in range(d + 1)]
        eig, radius = _exact_roots(charpoly)
        residual = 0.0
    else:
        with mpmath.workdps(60):
            am = [mpmath.mpc(complex(x)) for x in a]
            e = _newton_charpoly(am, d)
            implied = _forward_power_sums(e, len(am))
            residual = float(max((abs(x - y) / max(1, abs(x)) for x, y in zip(am, implied)), default=0))
            if residual > max(tol, 1e-6):
                raise SatakeError(f"inconsistent trace sequence (relative residual {residual:.3g})")
            coeffs = [(-1) ** k * e[k] for k in range(d + 1)]
            roots = _mp_roots(coeffs) if d else []
            eig = _merge_clusters([complex(z) for z in roots], a)
            radius = max((abs(z) for z in eig), default=0.0)
        charpoly = [complex(c) for c in coeffs]
    report = SpectralReport(radius, eig, charpoly, exact, residual)
    rad = float(radius)
    for n, x in enumerate(seq.entries, start=1):
        bound = d * rad ** n
        if abs(complex(x)) > bound * (1 + 1e-9) + 1e-9:
            raise SatakeError(f"|a_{n}| exceeds dim_V * rho^n; recovery is wrong")
    return report


def _mp_roots(coeffs) -> list:
    """Roots at the working precision.

    Durand-Kerner stalls on multiple roots; the companion-matrix eigenvalues
    at 60 digits still separate a k-fold root by only ~10^(-60/k).
    """
    try:
        return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=200))
    except mpmath.libmp.NoConvergence:
        pass
    d = len(coeffs) - 1
    lead = coeffs[0]
    comp = mpmath.zeros(d, d)
    for i in range(1, d):
        comp[i, i - 1] = 1
    for i in range(d):
        comp[i, d - 1] = -coeffs[d - i] / lead
    try:
        return list(mpmath.eig(comp, left=False, right=False))
    except Exception:  # pragma: no cover - last resort
        return [mpmath.mpc(z) for z in np.roots([complex(c) for c in coeffs])]


def _cluster(roots: list[complex], tau: float) -> list[complex]:
    scale = max((abs(z) for z in roots), default=1.0) or 1.0
    groups: list[list[complex]] = []
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        for g in groups:
            if abs(z - sum(g) / len(g)) <= tau * scale:
                g.append(z)
                break
        else:
            groups.append([z])
    out = []
    for g in groups:
        out.extend([sum(g) / len(g)] * len(g))
    return out


def _fit_residual(roots: list[complex], entries: Sequence) -> float:
    rad = max((abs(z) for z in roots), default=0.0) or 1.0
    worst = 0.0
    for n, a in enumerate(entries, start=1):
        approx = sum(z ** n for z in roots)
        worst = max(worst, abs(approx - complex(a)) / (len(roots) * rad ** n))
    return worst


def _merge_clusters(roots: list[complex], entries: Sequence, fit: float = 1e-12) -> list[complex]:
    """Coalesce root clusters as far as the data allows.

    Float power sums carry ~1e-16 relative noise, which splits a k-fold root
    into a cluster of radius ~(1e-16)^(1/k).  Replacing clusters by their means
    is accepted while the merged multiset still reproduces every entry to
    ``fit`` (relative to dim * rho^n); the widest accepted merge is returned.
    """
    best = roots
    for tau in (1e-12, 1e-10, 1e-8, 1e-6, 1e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1):
        cand = _cluster(roots, tau)
        if len(set(cand)) < len(set(best)) and _fit_residual(cand, entries) <= fit:
            best = cand
    return best


def _numeric_roots(coeffs: Sequence) -> list[complex]:
    if len(coeffs) == 1:
        return []
    with mpmath.workdps(40):
        cs = [mpmath.mpc(complex(c)) for c in coeffs]
        try:
            roots = mpmath.polyroots(cs, maxsteps=200, extraprec=80)
        except mpmath.libmp.NoConvergence:
            roots = [mpmath.mpc(z) for z in np.roots([complex(c) for c in coeffs])]
        return [complex(z) for z in roots]


def _exact_roots(coeffs: Sequence[Fraction]) -> tuple[list, object]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x)
    roots: list = []
    radius_exact = Fraction(0)
    radius_float = 0.0
    _, factors = sympy.factor_list(poly)
    for f, mult in factors:
        if f.degree() == 1:
            c1, c0 = f.all_coeffs()
            r = Fraction(int(sympy.numer(-c0 / c1)), int(sympy.denom(-c0 / c1)))
            roots.extend([r] * mult)
            radius_exact = max(radius_exact, abs(r))
        else:
            coeff = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in f.all_coeffs()]
            num = _numeric_roots(coeff)
            roots.extend(num * mult)
            radius_float = max([radius_float] + [abs(z) for z in num])
    if radius_float > float(radius_exact) * (1 + 1e-15) or (radius_float and radius_exact == 0):
        return roots, radius_float
    return roots, radius_exact


@dataclass
class WitnessReport:
    found: bool
    n: int | None = None
    k: int | None = None
    trace_abs: float | None = None
    bound: float | None = None
    searched: int = 0

    @property
    def verdict(self) -> str:
        return "witness" if self.found else "exhausted"


def temperedness_witness(t: SatakeParameter, lam0: Sequence[int], C: float = 10.0,
                         n_max: int = 64, k_max: int = 8, tol: float = DEFAULT_TOL) -> WitnessReport:
    """Search n <= n_max, 1 <= k <= k_max for |tr(t^n | V_{k lam0})| > C dim V_{k lam0}.

    Cells are visited in order of n + k, then k.  "exhausted" only certifies
    the searched box.
    """
    lam0 = tuple(lam0)
    if not t.datum.is_regular_dominant(lam0):
        raise SatakeError("lam0 must be regular dominant")
    if C < 1:
        raise SatakeError("C must be >= 1")
    logs: dict[int, list[tuple[complex, int]]] = {}
    searched = 0
    for s in range(2, n_max + k_max + 1):
        for k in range(1, k_max + 1):
            n = s - k
            if n < 1 or n > n_max:
                continue
            if k not in logs:
                lam = tuple(k * x for x in lam0)
                logs[k] = [(_log_monomial(t, mu), m) for mu, m in weight_multiplicities(t.datum, lam).mult.items()]
            dim = sum(m for _, m in logs[k])
            val = _abs_power_sum(logs[k], n)
            searched += 1
            bound = C * dim
            if val > bound * (1 + tol):
                return WitnessReport(True, n, k, val, bound, searched)
    return WitnessReport(False, searched=searched)


def _log_monomial(t: SatakeParameter, mu) -> complex:
    return sum((m * cmath.log(complex(v)) for v, m in zip(t.values, mu)), 0j)


def _abs_power_sum(terms: list[tuple[complex, int]], n: int) -> float:
    top = max(n * z.real for z, _ in terms)
    if top < 600:
        return abs(sum(m * cmath.exp(n * z) for z, m in terms))
    with mpmath.workdps(30):
        return float(abs(mpmath.fsum(m * mpmath.exp(n * mpmath.mpc(z)) for z, m in terms)))
