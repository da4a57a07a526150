"""Matrices over truncated power series rings F[t]/t^m and SL_r models.

A ring element is a tuple (c_0, ..., c_{m-1}) of field elements; an r x r
matrix is a row-major tuple of r*r ring elements.  Everything is a plain
tuple so elements hash and compare cheaply.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .finite_field import GF, field_for, prime_power


class LoopGroupError(ValueError):
    pass


class TruncatedRing:
    def __init__(self, field: GF, m: int):
        if m < 1:
            raise LoopGroupError("truncation level must be >= 1")
        self.F, self.m = field, m
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)

    def const(self, a: int) -> tuple:
        return (a,) + (0,) * (self.m - 1)

    def add(self, x, y):
        F = self.F
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.F.neg(a) for a in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        F, m = self.F, self.m
        out = [0] * m
        for i, a in enumerate(x):
            if a:
                for j in range(m - i):
                    b = y[j]
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return tuple(out)

    def is_unit(self, x) -> bool:
        return x[0] != 0

    def inv(self, x):
        F, m = self.F, self.m
        if not x[0]:
            raise ZeroDivisionError("not a unit in F[t]/t^m")
        a0 = F.inv(x[0])
        out = [a0] + [0] * (m - 1)
        for k in range(1, m):
            s = 0
            for i in range(1, k + 1):
                s = F.add(s, F.mul(x[i], out[k - i]))
            out[k] = F.neg(F.mul(a0, s))
        return tuple(out)

    def frob(self, x, k: int = 1):
        return tuple(self.F.frob(a, k) for a in x)

    def elements(self, coeffs: Iterable[int]) -> Iterator[tuple]:
        """All ring elements with coefficients drawn from ``coeffs``."""
        return itertools.product(tuple(coeffs), repeat=self.m)


class MatrixGroup:
    """r x r matrices over a truncated ring."""

    def __init__(self, ring: TruncatedRing, r: int):
        self.R, self.r = ring, r
        self.identity = tuple(ring.one if i == j else ring.zero for i in range(r) for j in range(r))

    def entry(self, g, i, j):
        return g[i * self.r + j]

    def mul(self, g, h):
        R, r = self.R, self.r
        out = []
        for i in range(r):
            for j in range(r):
                s = R.zero
                for k in range(r):
                    s = R.add(s, R.mul(g[i * r + k], h[k * r + j]))
                out.append(s)
        return tuple(out)

    def det(self, g):
        R, r = self.R, self.r
        if r == 1:
            return g[0]
        if r == 2:
            return R.sub(R.mul(g[0], g[3]), R.mul(g[1], g[2]))
        if r == 3:
            e = lambda i, j: g[i * 3 + j]
            terms = R.zero
            for (a, b, c), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                                    ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
                p = R.mul(R.mul(e(0, a), e(1, b)), e(2, c))
                terms = R.add(terms, p) if sign > 0 else R.sub(terms, p)
            return terms
        raise LoopGroupError("determinants only for r <= 3")

    def inv(self, g):
        R, r = self.R, self.r
        d = self.det(g)
        dinv = R.inv(d)
        if r == 1:
            return (dinv,)
        if r == 2:
            a, b, c, e = g
            return tuple(R.mul(dinv, x) for x in (e, R.neg(b), R.neg(c), a))
        if r == 3:
            def minor(i, j):
                rows = [k for k in range(3) if k != i]
                cols = [k for k in range(3) if k != j]
                a, b = (g[rows[0] * 3 + cols[0]], g[rows[0] * 3 + cols[1]])
                c, e = (g[rows[1] * 3 + cols[0]], g[rows[1] * 3 + cols[1]])
                return R.sub(R.mul(a, e), R.mul(b, c))
            out = []
            for i in range(3):
                for j in range(3):
                    cof = minor(j, i)
                    if (i + j) % 2:
                        cof = R.neg(cof)
                    out.append(R.mul(dinv, cof))
            return tuple(out)
        raise LoopGroupError("inverses only for r <= 3")

    def conj(self, g, h, g_inv=None):
        """g h g^{-1}."""
        return self.mul(self.mul(g, h), g_inv if g_inv is not None else self.inv(g))

    def frob(self, g, k: int = 1):
        return tuple(self.R.frob(x, k) for x in g)

    def power(self, g, n: int):
        if n < 0:
            g, n = self.inv(g), -n
        out = self.identity
        while n:
            if n & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            n >>= 1
        return out

    def is_special(self, g) -> bool:
        return self.det(g) == self.R.one

    def reduce(self, g):
        """Reduction mod t, as a matrix of field elements."""
        return tuple(x[0] for x in g)

    def from_entries(self, rows) -> tuple:
        """Build from nested lists of ring elements or field ints (constants)."""
        R = self.R
        out = []
        for row in rows:
            for x in row:
                out.append(R.const(x) if isinstance(x, int) else tuple(x))
        if len(out) != self.r * self.r:
            raise LoopGroupError("wrong matrix shape")
        return tuple(out)

    def to_json(self, g) -> list:
        return [[list(g[i * self.r + j]) for j in range(self.r)] for i in range(self.r)]


# ---------------------------------------------------------------- model


SUPPORTED_GROUPS = ("SL2", "SL3")


def _group_rank(group: str) -> int:
    if group not in SUPPORTED_GROUPS:
        raise LoopGroupError(f"unsupported group {group!r}; expected one of {SUPPORTED_GROUPS}")
    return int(group[2:])


def sl_order(r: int, Q: int) -> int:
    out = Q ** (r * (r - 1) // 2)
    for i in range(2, r + 1):
        out *= Q ** i - 1
    return out


@dataclass(frozen=True)
class TruncatedLoopGroupModel:
    """SL_r over F_{q^n}[t]/t^m, realised inside a field big enough for all n <= n_cap."""

    group: str
    q: int
    n: int
    m: int
    n_cap: int = 0

    def __post_init__(self):
        _group_rank(self.group)
        prime_power(self.q)
        if self.q > 16:
            raise LoopGroupError("q <= 16 is required for enumeration")
        if not 1 <= self.m <= 3:
            raise LoopGroupError("truncation level m must be 1, 2 or 3")
        if self.n < 1:
            raise LoopGroupError("extension degree must be >= 1")

    @property
    def r(self) -> int:
        return _group_rank(self.group)

    @functools.cached_property
    def field(self) -> GF:
        return field_for(self.q, tuple(range(1, max(self.n, self.n_cap) + 1)))[0]

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    @property
    def degree(self) -> int:
        """Degree of F_{q^n} over the prime field."""
        return self.e * self.n

    @functools.cached_property
    def ring(self) -> TruncatedRing:
        return TruncatedRing(self.field, self.m)

    @functools.cached_property
    def mat(self) -> MatrixGroup:
        return MatrixGroup(self.ring, self.r)

    @property
    def scalars(self) -> tuple[int, ...]:
        """Elements of F_{q^n}."""
        return self.field.subfield(self.degree)

    def base_scalars(self) -> tuple[int, ...]:
        return self.field.subfield(self.e)

    def cardinality(self) -> int:
        Q = self.q ** self.n
        dim = self.r * self.r - 1
        return sl_order(self.r, Q) * Q ** ((self.m - 1) * dim)

    def ring_elements(self, kernel: bool = False) -> Iterator[tuple]:
        """Elements of F_{q^n}[t]/t^m; with ``kernel`` only those in tR."""
        s = self.scalars
        if kernel:
            return ((0,) + rest for rest in itertools.product(s, repeat=self.m - 1))
        return itertools.product(s, repeat=self.m)

    def enumerate(self) -> Iterator[tuple]:
        """All group elements (brute force; only for tiny models)."""
        if self.cardinality() > 200_000:
            raise LoopGroupError("model too large to enumerate")
        r = self.r
        for entries in itertools.product(list(self.ring_elements()), repeat=r * r):
            if self.mat.is_special(entries):
                yield entries

    def with_degree(self, n: int) -> "TruncatedLoopGroupModel":
        return TruncatedLoopGroupModel(self.group, self.q, n, self.m, max(self.n_cap, self.n, n))


# ---------------------------------------------------------------- parabolics


@dataclass(frozen=True)
class StandardParabolic:
    """Block-upper-triangular parabolic with the given block sizes."""

    tag: str
    blocks: tuple[int, ...]

    def radical_positions(self) -> list[tuple[int, int]]:
        pos, start = [], 0
        bounds = []
        for b in self.blocks:
            bounds.append((start, start + b))
            start += b
        for bi, (s1, e1) in enumerate(bounds):
            for s2, e2 in bounds[bi + 1:]:
                for i in range(s1, e1):
                    for j in range(s2, e2):
                        pos.append((i, j))
        return pos

    def opposite_positions(self) -> list[tuple[int, int]]:
        return [(j, i) for i, j in self.radical_positions()]


def standard_parabolic_list(group: str) -> list[StandardParabolic]:
    r = _group_rank(group)
    if r == 2:
        return [StandardParabolic("B", (1, 1))]
    return [StandardParabolic("B", (1, 1, 1)), StandardParabolic("P(1,2)", (1, 2)),
            StandardParabolic("P(2,1)", (2, 1))]


def radical_elements(model: TruncatedLoopGroupModel, par: StandardParabolic) -> Iterator[tuple]:
    """Points of N_P(F_{q^n}[t]/t^m)."""
    mat, R = model.mat, model.ring
    pos = par.radical_positions()
    ring_elts = list(model.ring_elements())
    for vals in itertools.product(ring_elts, repeat=len(pos)):
        g = list(mat.identity)
        for (i, j), v in zip(pos, vals):
            g[i * model.r + j] = v
        yield tuple(g)


def standard_parabolics(model: TruncatedLoopGroupModel) -> list[tuple[str, Callable[[], Iterator[tuple]]]]:
    return [(p.tag, functools.partial(radical_elements, model, p)) for p in standard_parabolic_list(model.group)]


def _subspaces(F: GF, scalars, r: int, k: int) -> Iterator[list[list[int]]]:
    """k-dimensional subspaces of (F_{q^n})^r as reduced row echelon bases."""
    for pivots in itertools.combinations(range(r), k):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, r) if j not in pivots]
        for vals in itertools.product(scalars, repeat=len(free)):
            rows = [[0] * r for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield rows


def _complete_basis(F: GF, vectors: list[list[int]], r: int) -> list[list[int]]:
    basis = [list(v) for v in vectors]
    for i in range(r):
        e = [int(i == j) for j in range(r)]
        if _rank(F, basis + [e]) > len(basis):
            basis.append(e)
        if len(basis) == r:
            break
    return basis


def _rank(F: GF, rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = F.inv(m[rank][c])
        m[rank] = [F.mul(inv, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def flag_representatives(model: TruncatedLoopGroupModel, par: StandardParabolic) -> Iterator[tuple]:
    """g0 in SL_r(F_{q^n}) running over G/P(F_{q^n}), as constant matrices."""
    F, r, R = model.field, model.r, model.ring
    scalars = model.scalars
    dims = list(itertools.accumulate(par.blocks))[:-1]

    def flags(prefix: list[list[int]], level: int):
        if level == len(dims):
            yield prefix
            return
        k = dims[level]
        for sub in _subspaces(F, scalars, r, k):
            if prefix and _rank(F, sub + prefix) != k:
                continue
            # basis of sub extending the previous one
            ext = list(prefix)
            for v in sub:
                if _rank(F, ext + [v]) > len(ext):
                    ext.append(v)
            yield from flags(ext, level + 1)

    for basis in flags([], 0):
        cols = _complete_basis(F, basis, r)
        g = [[cols[j][i] for j in range(r)] for i in range(r)]
        mat = model.mat.from_entries(g)
        d = model.mat.det(mat)[0]
        # rescale the last column to get determinant 1
        dinv = F.inv(d)
        for i in range(r):
            g[i][r - 1] = F.mul(g[i][r - 1], dinv)
        yield model.mat.from_entries(g)


def coset_representatives(model: TruncatedLoopGroupModel, par: StandardParabolic) -> Iterator[tuple]:
    """Representatives of G(R)/P(R): g0 * n with n in the opposite radical over tR."""
    mat = model.mat
    opp = par.opposite_positions()
    kern = list(model.ring_elements(kernel=True))
    for g0 in flag_representatives(model, par):
        for vals in itertools.product(kern, repeat=len(opp)):
            n = list(mat.identity)
            for (i, j), v in zip(opp, vals):
                n[i * model.r + j] = v
            yield mat.mul(g0, tuple(n))


def coset_count(model: TruncatedLoopGroupModel, par: StandardParabolic) -> int:
    Q = model.q ** model.n
    r = model.r
    # |G/P| over F_Q times Q^{(m-1) dim N}
    num = 1
    for i in range(1, r + 1):
        num *= Q ** i - 1
    den = 1
    for b in par.blocks:
        for i in range(1, b + 1):
            den *= Q ** i - 1
    return num // den * Q ** ((model.m - 1) * len(par.radical_positions()))
