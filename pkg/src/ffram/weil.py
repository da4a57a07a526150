"""Weil numbers, exponential-sum recovery and dimension/weight budgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath
import sympy

from .grassmann import d_lambda
from .rootdata import RootDatum


class WeilError(ValueError):
    pass


@dataclass(frozen=True)
class WeilNumberClaim:
    min_poly: tuple[int, ...]  # monic, highest degree first
    q: int
    weight: int

    def __post_init__(self):
        if len(self.min_poly) < 2:
            raise WeilError("polynomial must be nonconstant")
        if any(not isinstance(c, int) for c in self.min_poly):
            raise WeilError("coefficients must be integers")
        if self.min_poly[0] != 1:
            raise WeilError("polynomial must be monic")
        if self.q < 2 or len(sympy.factorint(self.q)) != 1:
            raise WeilError(f"q={self.q} is not a prime power")


@dataclass
class RootCheck:
    root: complex
    modulus: float
    target: float
    ok: bool


@dataclass
class WeilReport:
    ok: bool
    roots: list[RootCheck]


def polynomial_roots(coeffs: Sequence, dps: int = 50) -> list[complex]:
    """All complex roots, found at high precision and refined."""
    if len(coeffs) < 2:
        return []
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(int(c)) if isinstance(c, int) else mpmath.mpmathify(c) for c in coeffs]
        roots = mpmath.polyroots(cs, maxsteps=500, extraprec=2 * dps)
        return [complex(r) for r in roots]


def verify_weil(claim: WeilNumberClaim, tol: float = 1e-9) -> WeilReport:
    """True iff every complex root has modulus q^{w/2} within relative ``tol``."""
    if tol <= 0:
        raise WeilError("tol must be positive")
    target = float(mpmath.sqrt(mpmath.mpf(claim.q) ** claim.weight))
    checks = []
    for r in polynomial_roots(claim.min_poly):
        mod = abs(r)
        checks.append(RootCheck(r, mod, target, abs(mod - target) <= tol * target))
    return WeilReport(all(c.ok for c in checks), checks)


# ---------------------------------------------------------------- recovery


def berlekamp_massey(seq: Sequence[int | Fraction]) -> list[Fraction]:
    """Shortest recurrence over Q: returns [1, c1, ..., cL] with sum_i c_i s_{n-i} = 0."""
    s = [Fraction(x) for x in seq]
    c, b = [Fraction(1)], [Fraction(1)]
    length, m, last = 0, 1, Fraction(1)
    for n in range(len(s)):
        disc = s[n] + sum(c[i] * s[n - i] for i in range(1, length + 1))
        if disc == 0:
            m += 1
            continue
        coef = disc / last
        t = list(c)
        c = c + [Fraction(0)] * (len(b) + m - len(c))
        for i, bi in enumerate(b):
            c[i + m] -= coef * bi
        if 2 * length <= n:
            length, b, last, m = n + 1 - length, t, disc, 1
        else:
            m += 1
    return c[: length + 1] + [Fraction(0)] * (length + 1 - len(c))


@dataclass(frozen=True)
class AlgebraicRoot:
    """A root of an irreducible integer polynomial, pinned by a numerical value."""

    poly: tuple[int, ...]
    index: int
    approx: complex

    @property
    def is_integer(self) -> bool:
        return len(self.poly) == 2 and self.poly[0] == 1

    @property
    def integer_value(self) -> int:
        if not self.is_integer:
            raise WeilError("not an integer")
        return -self.poly[1]


@dataclass
class ExponentialSum:
    terms: list[tuple[AlgebraicRoot, int, int]]  # (root, sign, multiplicity)
    start: int = 1
    status: str = "ok"
    order: int = 0
    non_integral: list[tuple[int, ...]] = field(default_factory=list)

    def evaluate(self, n: int):
        total = 0
        for root, sign, mult in self.terms:
            if root.is_integer:
                total += sign * mult * root.integer_value ** n
            else:
                total += sign * mult * root.approx ** n
        return total

    def as_integer_dict(self) -> dict[int, int]:
        """{root: signed multiplicity} when every root is an integer."""
        return {r.integer_value: s * m for r, s, m in self.terms}

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "terms": [{"poly": list(r.poly), "root_index": r.index, "sign": s, "mult": m,
                       "approx": [r.approx.real, r.approx.imag]} for r, s, m in self.terms],
        }


def _power_sums_of_factor(coeffs: Sequence[int], count: int) -> list[Fraction]:
    """p_1..p_count for the roots of a monic integer polynomial (Newton)."""
    d = len(coeffs) - 1
    e = [Fraction((-1) ** k * coeffs[k]) for k in range(d + 1)]
    p: list[Fraction] = []
    for k in range(1, count + 1):
        s = Fraction(0)
        for i in range(1, min(k - 1, d) + 1):
            s += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        if k <= d:
            s += (-1) ** (k - 1) * k * e[k]
        p.append(s)
    return p


def recover_power_sum(seq: Sequence[int], n_terms: int | None = None, start: int = 1) -> ExponentialSum:
    """Write S_n (n = start, start+1, ...) as sum_i eps_i alpha_i^n.

    The minimal recurrence comes from Berlekamp-Massey over Q; its
    characteristic polynomial is factored over Z and one signed integer
    coefficient per irreducible factor is solved for exactly.
    """
    if any(int(x) != x for x in seq):
        raise WeilError("sequence entries must be integers")
    seq = [int(x) for x in seq]
    if n_terms is None:
        n_terms = len(seq) // 2
    rec = berlekamp_massey(seq)
    order = len(rec) - 1
    if order > n_terms or 2 * order > len(seq):
        return ExponentialSum([], start, "undetermined", order)
    if order == 0:
        return ExponentialSum([], start, "ok", 0)
    x = sympy.Symbol("x")
    den = 1
    for c in rec:
        den = sympy.ilcm(den, c.denominator)
    charpoly = sympy.Poly([int(c * den) for c in rec], x)
    _, factors = sympy.factor_list(charpoly)
    blocks = []
    non_integral = []
    for f, mult in factors:
        coeffs = [int(c) for c in f.all_coeffs()]
        if coeffs[0] < 0:
            coeffs = [-c for c in coeffs]
        if len(coeffs) == 2 and coeffs[1] == 0:
            continue  # the root 0 never contributes for n >= 1
        if mult > 1:
            return ExponentialSum([], start, "not-semisimple", order)
        if coeffs[0] != 1:
            non_integral.append(tuple(coeffs))
        blocks.append(coeffs)
    # S_n = sum_f c_f p_n(f)
    count = start + len(seq)
    cols = [_power_sums_of_factor([Fraction(c, f[0]) for c in f], count) if f[0] != 1
            else _power_sums_of_factor(f, count) for f in blocks]
    rows = [[col[n - 1] if n >= 1 else Fraction(len(f) - 1) for col, f in zip(cols, blocks)]
            for n in range(start, start + len(seq))]
    mat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows])
    rhs = sympy.Matrix(seq)
    try:
        sol, params = mat.gauss_jordan_solve(rhs)
    except ValueError:
        return ExponentialSum([], start, "undetermined", order, non_integral)
    if params.shape[0]:
        return ExponentialSum([], start, "undetermined", order, non_integral)
    terms = []
    status = "ok"
    for f, c in zip(blocks, sol):
        if c == 0:
            continue
        if not c.is_integer:
            status = "non-integral-coefficient"
        roots = polynomial_roots(f)
        roots.sort(key=lambda z: (-abs(z), -z.real, -z.imag))
        for i, z in enumerate(roots):
            if len(f) == 2 and f[0] == 1:
                z = complex(-f[1])
            terms.append((AlgebraicRoot(tuple(f), i, z), 1 if c > 0 else -1, abs(int(c)) if c.is_integer else c))
    if non_integral:
        status = "non-integral-roots" if status == "ok" else status
    return ExponentialSum(terms, start, status, order, non_integral)


def forward_power_sum(terms: Mapping[int, int], length: int, start: int = 1) -> list[int]:
    """S_n = sum_alpha c_alpha alpha^n for integer roots."""
    return [sum(c * a ** n for a, c in terms.items()) for n in range(start, start + length)]


# ---------------------------------------------------------------- budgets


def _nonneg(*xs):
    if any(x < 0 for x in xs):
        raise WeilError("inputs must be nonnegative")


def dim_bun(dim_G: int, g: int, deg_D: int) -> int:
    _nonneg(dim_G, g, deg_D)
    return dim_G * (g + deg_D - 1)


def dim_hecke(dim_G: int, g: int, deg_D: int, dW: int) -> int:
    _nonneg(dW)
    return dim_bun(dim_G, g, deg_D) + dW


def d_of_W(datum: RootDatum, W) -> int:
    """sum over places of 2 deg(x) <W_x, rho>; ``W`` is an iterable of (degree, coweight)."""
    items = W.items() if isinstance(W, Mapping) else W
    total = 0
    for deg, lam in items:
        if deg < 1:
            raise WeilError("place degrees are positive")
        total += deg * d_lambda(datum, lam)
    return total


def avg_bound_exponent(dim_G: int, g: int, deg_D: int, dim_H: int) -> int:
    _nonneg(dim_H)
    return dim_bun(dim_G, g, deg_D) - dim_H


def weil_weight_cap(dim_G: int, g: int, deg_D: int, dim_H: int, dW1: int, dW2: int) -> Fraction:
    """Weight cap as stated with the theorem."""
    _nonneg(dim_H, dW1, dW2)
    return Fraction(dim_bun(dim_G, g, deg_D)) + Fraction(dW1, 2) + Fraction(dW2, 2) - dim_H


def weil_weight_cap_proof_form(dim_G: int, g: int, deg_D: int, dim_H: int, dW1: int, dW2: int) -> int:
    """Largest weight reached in the proof, after dividing by |H|^2."""
    _nonneg(dim_H, dW1, dW2)
    return 2 * dim_bun(dim_G, g, deg_D) - 2 * dim_H + dW1 + dW2


def budget_report(dim_G: int, g: int, deg_D: int, dim_H: int, dW1: int = 0, dW2: int = 0) -> dict:
    return {
        "dim_bun": dim_bun(dim_G, g, deg_D),
        "dim_hecke_W1": dim_hecke(dim_G, g, deg_D, dW1),
        "avg_bound_exponent": avg_bound_exponent(dim_G, g, deg_D, dim_H),
        "weil_weight_cap": str(weil_weight_cap(dim_G, g, deg_D, dim_H, dW1, dW2)),
        "weil_weight_cap_proof_form": weil_weight_cap_proof_form(dim_G, g, deg_D, dim_H, dW1, dW2),
    }
