"""Root systems, Weyl groups and pairings for split simple types.

Conventions (frozen):

* Simple roots are numbered as in Bourbaki's plates.
* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``.
* A weight is a tuple of integers in the basis of fundamental weights
  omega_1..omega_r; a coweight is a tuple in the basis of fundamental
  coweights.  Roots are additionally cached in simple-root coordinates and
  coroots in simple-coroot coordinates.
* ``<omega_i, alpha_j^vee> = delta_ij`` and ``<alpha_i, omega_j^vee> =
  delta_ij``; a general weight/coweight pairing is rational.

The coweights of a datum are the weights of its dual datum (transposed Cartan
matrix) with the same coordinate vectors, which is how the Satake side reads
coweights of G as weights of the dual group.
"""

from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Weight = tuple[int, ...]
Coweight = tuple[int, ...]

MAX_RANK = 8
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        family, rank = self.family, self.rank
        if not isinstance(rank, int) or rank < 1:
            raise RootDataError(f"rank must be a positive integer, got {rank!r}")
        if rank > MAX_RANK:
            raise RootDataError(f"rank {rank} exceeds the supported cap {MAX_RANK}")
        if family in _EXCEPTIONAL_RANKS:
            if rank not in _EXCEPTIONAL_RANKS[family]:
                raise RootDataError(f"type {family}{rank} does not exist")
        elif family in _MIN_RANK:
            if rank < _MIN_RANK[family]:
                raise RootDataError(
                    f"type {family}{rank} requires rank >= {_MIN_RANK[family]}")
        else:
            raise RootDataError(f"unknown Cartan family {family!r}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootDataError(f"cannot parse Cartan type {text!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(cartan: CartanType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``a_ij = <alpha_i^vee, alpha_j>`` in Bourbaki numbering."""
    n, fam = cartan.rank, cartan.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif fam == "B":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n short
        link(n - 2, n - 1, -1, -2)
    elif fam == "C":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n long
        link(n - 2, n - 1, -2, -1)
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in a)


def _inverse(matrix: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _height_key(v: Sequence[int]):
    return (sum(v), tuple(v))


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Simple root system with exact-arithmetic helpers.

    Build instances with :func:`build_root_system` (or
    :meth:`from_cartan_matrix`); construction enumerates the positive roots
    by closure under simple reflections.
    """

    cartan: CartanType | None
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]  # simple-root coordinates
    positive_coroots_simple: tuple[tuple[int, ...], ...]  # simple-coroot coordinates

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.cartan_matrix == other.cartan_matrix

    def __hash__(self):
        return hash(self.cartan_matrix)

    def __repr__(self):
        return f"RootDatum({self.name})"

    @property
    def name(self) -> str:
        return str(self.cartan) if self.cartan is not None else "custom"

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_cartan_matrix(cls, matrix, cartan: CartanType | None = None) -> "RootDatum":
        a = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(a)
        for i in range(n):
            if a[i][i] != 2:
                raise RootDataError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise RootDataError("invalid off-diagonal Cartan entries")

        # s_i on simple-root coordinates: c -> c - <c, alpha_i^vee> e_i, where
        # <sum c_k alpha_k, alpha_i^vee> = sum_k c_k a_ik.
        def reflect_roots(c, i, mat):
            p = sum(ck * mat[i][k] for k, ck in enumerate(c))
            out = list(c)
            out[i] -= p
            return tuple(out)

        def closure(mat):
            simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
            seen = set(simple)
            queue = deque(simple)
            while queue:
                r = queue.popleft()
                for i in range(n):
                    s = reflect_roots(r, i, mat)
                    if s not in seen:
                        seen.add(s)
                        queue.append(s)
            pos = [r for r in seen if all(x >= 0 for x in r)]
            return tuple(sorted(pos, key=_height_key))

        roots = closure(a)
        at = tuple(zip(*a))
        coroots_set = set(closure(at))
        # alpha^vee = 2 alpha / (alpha, alpha); match each root with its coroot
        sym = _symmetrizer(a)
        coroots = []
        for r in roots:
            norm = sum(r[i] * r[j] * sym[i] * a[i][j] for i in range(n) for j in range(n))
            # (alpha_i, alpha_j) = d_i a_ij and alpha_i = d_i alpha_i^vee
            cv = tuple(Fraction(2 * r[i] * sym[i], norm) for i in range(n))
            if any(x.denominator != 1 for x in cv):
                raise RootDataError("non-integral coroot; bad Cartan matrix")
            cv = tuple(int(x) for x in cv)
            if cv not in coroots_set:
                raise RootDataError("coroot closure mismatch")
            coroots.append(cv)
        return cls(cartan, a, roots, tuple(coroots))

    # -- linear algebra ---------------------------------------------------

    @functools.cached_property
    def cartan_inverse(self):
        return _inverse(self.cartan_matrix)

    @functools.cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        """d_i with (alpha_i, alpha_i) = 2 d_i, short roots having d = 1."""
        return _symmetrizer(self.cartan_matrix)

    def root_to_weight(self, c: Sequence[int]) -> Weight:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        a = self.cartan_matrix
        n = self.rank
        return tuple(sum(a[k][i] * c[i] for i in range(n)) for k in range(n))

    def weight_to_root(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        inv = self.cartan_inverse
        n = self.rank
        return tuple(sum(inv[i][k] * w[k] for k in range(n)) for i in range(n))

    def coroot_to_coweight(self, c: Sequence[int]) -> Coweight:
        """Simple-coroot coordinates -> fundamental-coweight coordinates."""
        a = self.cartan_matrix
        n = self.rank
        return tuple(sum(c[i] * a[i][k] for i in range(n)) for k in range(n))

    def coweight_to_coroot(self, c: Sequence[int]) -> tuple[Fraction, ...]:
        inv = self.cartan_inverse
        n = self.rank
        return tuple(sum(c[j] * inv[j][i] for j in range(n)) for i in range(n))

    def inner(self, u: Sequence, w: Sequence) -> Fraction:
        """W-invariant form on weights (short roots have squared length 2)."""
        d = self.symmetrizer
        cu = self.weight_to_root(u)
        return sum((Fraction(w[j]) * d[j] * cu[j] for j in range(self.rank)), Fraction(0))

    @functools.cached_property
    def gram_scaled(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """(D, G) with integer G such that inner(u, w) = u^T G w / D."""
        inv, d, n = self.cartan_inverse, self.symmetrizer, self.rank
        den = math.lcm(*(x.denominator for row in inv for x in row))
        g = tuple(tuple(int(den * d[j] * inv[j][k]) for j in range(n)) for k in range(n))
        return den, g

    def inner_scaled(self, u: Sequence[int], w: Sequence[int]) -> int:
        g = self.gram_scaled[1]
        return sum(u[k] * sum(row[j] * w[j] for j in range(len(w))) for k, row in enumerate(g))

    @functools.cached_property
    def simple_roots_weights(self) -> tuple[Weight, ...]:
        n = self.rank
        return tuple(self.root_to_weight([int(i == j) for j in range(n)]) for i in range(n))

    @functools.cached_property
    def positive_roots_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(r) for r in self.positive_roots)

    @functools.cached_property
    def positive_coroots(self) -> tuple[Coweight, ...]:
        return tuple(self.coroot_to_coweight(c) for c in self.positive_coroots_simple)

    @functools.cached_property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @functools.cached_property
    def highest_root_weight(self) -> Weight:
        return self.root_to_weight(self.highest_root)

    def dual(self) -> "RootDatum":
        """Datum with transposed Cartan matrix: weights <-> coweights."""
        ct = self.cartan
        if ct is not None and ct.family in "BC" and ct.rank >= 3:
            ct = CartanType("C" if ct.family == "B" else "B", ct.rank)
        return _from_matrix_cached(tuple(zip(*self.cartan_matrix)), ct)

    # -- Weyl action ------------------------------------------------------

    def reflect(self, w: Sequence[int], i: int) -> Weight:
        a = self.cartan_matrix
        wi = w[i]
        if wi == 0:
            return tuple(w)
        return tuple(x - wi * a[k][i] for k, x in enumerate(w))

    def reflect_coweight(self, c: Sequence[int], i: int) -> Coweight:
        a = self.cartan_matrix
        ci = c[i]
        if ci == 0:
            return tuple(c)
        return tuple(x - ci * a[i][k] for k, x in enumerate(c))

    def apply_word(self, word: Iterable[int], w: Sequence[int]) -> Weight:
        """Apply s_{word[0]} s_{word[1]} ... to w (rightmost acts first)."""
        out = tuple(w)
        for i in reversed(list(word)):
            out = self.reflect(out, i)
        return out

    @functools.cached_property
    def weyl_group(self) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
        """All Weyl group elements as (matrix on weight coordinates, length).

        Elements are generated by breadth-first closure so the BFS depth is
        the Coxeter length.  Cost grows with |W|; capped at 10**5 elements.
        """
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = []
        for i in range(n):
            cols = [self.reflect(ident[k], i) for k in range(n)]
            gens.append(tuple(tuple(cols[k][r] for k in range(n)) for r in range(n)))
        seen = {ident: 0}
        order = [ident]
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            depth = seen[m]
            for g in gens:
                prod = _matmul(g, m)
                if prod not in seen:
                    seen[prod] = depth + 1
                    order.append(prod)
                    queue.append(prod)
                    if len(seen) > 100_000:
                        raise RootDataError(f"Weyl group of {self.name} too large to enumerate")
        return tuple((m, seen[m]) for m in order)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_group)

    @functools.cached_property
    def longest_element(self):
        return max(self.weyl_group, key=lambda e: e[1])[0]

    def is_dominant(self, w: Sequence[int]) -> bool:
        return all(x >= 0 for x in w)

    def is_regular_dominant(self, w: Sequence[int]) -> bool:
        return all(x >= 1 for x in w)


def _symmetrizer(a) -> tuple[int, ...]:
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and d[j] is None:
                    # d_i a_ij = d_j a_ji
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    scaled = [x * lcm for x in d]
    g = 0
    for x in scaled:
        g = math.gcd(g, int(x))
    return tuple(int(x) // g for x in scaled)


def _matmul(x, y):
    n = len(x)
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def matvec(m, v):
    return tuple(sum(mi * vi for mi, vi in zip(row, v)) for row in m)


@functools.lru_cache(maxsize=None)
def _from_matrix_cached(matrix, cartan):
    return RootDatum.from_cartan_matrix(matrix, cartan)


@functools.lru_cache(maxsize=None)
def build_root_system(cartan: CartanType | str) -> RootDatum:
    """Root datum of a split simple type, e.g. ``build_root_system("G2")``."""
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    return _from_matrix_cached(cartan_matrix(cartan), cartan)


def pairing(datum: RootDatum, w: Sequence[int], c: Sequence[int]) -> Fraction:
    """<w, c> for a weight ``w`` and coweight ``c`` (fundamental coordinates).

    Exact; integral whenever one argument lies in the (co)root lattice.
    """
    if len(w) != datum.rank or len(c) != datum.rank:
        raise RootDataError(f"rank mismatch: {len(w)}, {len(c)} vs {datum.rank}")
    return sum((Fraction(x) * y for x, y in zip(datum.weight_to_root(w), c)), Fraction(0))


def pair_coroot(w: Sequence[int], coroot_simple: Sequence[int]) -> int:
    """<w, alpha^vee> with the coroot in simple-coroot coordinates."""
    return sum(x * y for x, y in zip(w, coroot_simple))


def rho(datum: RootDatum) -> Weight:
    return (1,) * datum.rank


def rho_check(datum: RootDatum) -> bool:
    """True iff 2 rho equals the sum of the positive roots."""
    n = datum.rank
    total = [sum(r[i] for r in datum.positive_roots) for i in range(n)]
    return datum.root_to_weight(total) == tuple(2 * x for x in rho(datum))


def rho_vee_doubled(datum: RootDatum) -> tuple[int, ...]:
    """Sum of positive coroots (= 2 rho^vee) in simple-coroot coordinates."""
    n = datum.rank
    return tuple(sum(c[i] for c in datum.positive_coroots_simple) for i in range(n))


def weyl_orbit(datum: RootDatum, w: Sequence[int]) -> frozenset[Weight]:
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(datum.rank):
            y = datum.reflect(x, i)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def dominant_representative(datum: RootDatum, w: Sequence[int]) -> tuple[Weight, list[int]]:
    """Return (dominant weight, word) with ``apply_word(word, dominant) == w``."""
    x = tuple(w)
    word: list[int] = []
    while True:
        for i, xi in enumerate(x):
            if xi < 0:
                x = datum.reflect(x, i)
                word.append(i)
                break
        else:
            return x, word


def dominant_with_sign(datum: RootDatum, w: Sequence[int]) -> tuple[Weight, int]:
    """Dominant representative and the parity (+1/-1) of the reflection count."""
    x = tuple(w)
    sign = 1
    while True:
        for i, xi in enumerate(x):
            if xi < 0:
                x = datum.reflect(x, i)
                sign = -sign
                break
        else:
            return x, sign


def root_lattice_class(datum: RootDatum, w: Sequence[int]) -> tuple[Fraction, ...]:
    """Class of ``w`` in weight lattice / root lattice, as fractional parts."""
    return tuple(x - math.floor(x) for x in datum.weight_to_root(w))


def datum_to_json(datum: RootDatum) -> dict:
    return {
        "family": datum.cartan.family if datum.cartan else None,
        "rank": datum.rank,
        "cartan_matrix": [list(r) for r in datum.cartan_matrix],
        "positive_roots": [list(r) for r in datum.positive_roots],
        "positive_roots_weights": [list(r) for r in datum.positive_roots_weights],
        "weyl_order": datum.weyl_order if datum.rank <= 4 else None,
    }


def datum_from_json(obj: dict) -> RootDatum:
    if obj.get("family"):
        datum = build_root_system(CartanType(obj["family"], int(obj["rank"])))
    else:
        datum = _from_matrix_cached(tuple(tuple(r) for r in obj["cartan_matrix"]), None)
    if "cartan_matrix" in obj and [list(r) for r in datum.cartan_matrix] != obj["cartan_matrix"]:
        raise RootDataError("Cartan matrix does not match family/rank")
    return datum
