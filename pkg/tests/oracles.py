"""Independent reference computations used by the tests.

Nothing here imports from ffram.  Cartan matrices are typed in by hand
(a_ij = <alpha_i^vee, alpha_j>, Bourbaki numbering) and everything else is
derived from them by brute force.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache

CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
    "B3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "C3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
}


def transpose(a):
    return tuple(zip(*a))


def positive_roots(a) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates by closing under simple reflections."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                c = sum(a[i][j] * beta[j] for j in range(n))
                gamma = tuple(b - c * int(k == i) for k, b in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    new.append(gamma)
        frontier = new
    return sorted(r for r in seen if all(x >= 0 for x in r))


def simple_root_weight(a, i):
    """alpha_i in fundamental-weight coordinates: column i of the Cartan matrix."""
    return tuple(a[k][i] for k in range(len(a)))


def root_to_weight(a, r):
    n = len(a)
    return tuple(sum(a[k][i] * r[i] for i in range(n)) for k in range(n))


def weyl_group_with_signs(a):
    """All Weyl elements as integer matrices on weight coordinates, with det sign."""
    n = len(a)

    def refl(i):
        # s_i(w) = w - w_i alpha_i
        col = simple_root_weight(a, i)
        return tuple(tuple(int(r == c) - (col[r] if c == i else 0) for c in range(n)) for r in range(n))

    def mul(x, y):
        return tuple(tuple(sum(x[r][k] * y[k][c] for k in range(n)) for c in range(n)) for r in range(n))

    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    gens = [refl(i) for i in range(n)]
    seen = {ident: 1}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = mul(s, g)
                if h not in seen:
                    seen[h] = -seen[g]
                    new.append(h)
        frontier = new
    return seen


def apply(m, w):
    return tuple(sum(m[r][c] * w[c] for c in range(len(w))) for r in range(len(m)))


def weight_to_root(a, w):
    """Solve A^T-coordinates: w = sum_i r_i alpha_i, exact."""
    n = len(a)
    m = [[Fraction(a[k][i]) for i in range(n)] + [Fraction(w[k])] for k in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def q_kostant(a, nu) -> Counter:
    """{number of parts: number of ways} writing nu as a sum of positive roots."""
    roots = positive_roots(a)

    @lru_cache(maxsize=None)
    def go(rest, idx):
        if all(x == 0 for x in rest):
            return Counter({0: 1})
        if idx == len(roots) or any(x < 0 for x in rest):
            return Counter()
        out = Counter(go(rest, idx + 1))
        r = roots[idx]
        nxt = tuple(x - y for x, y in zip(rest, r))
        if all(x >= 0 for x in nxt):
            for k, v in go(nxt, idx).items():
                out[k + 1] += v
        return out

    return go(tuple(nu), 0)


def kostant_multiplicity(a, lam, mu) -> int:
    """Kostant's formula with the classical partition function."""
    n = len(a)
    rho = (1,) * n
    lr = tuple(x + y for x, y in zip(lam, rho))
    mr = tuple(x + y for x, y in zip(mu, rho))
    total = 0
    for m, sign in weyl_group_with_signs(a).items():
        diff = tuple(x - y for x, y in zip(apply(m, lr), mr))
        r = weight_to_root(a, diff)
        if any(x.denominator != 1 or x < 0 for x in r):
            continue
        total += sign * sum(q_kostant(a, tuple(int(x) for x in r)).values())
    return total


def weyl_dimension(a, lam) -> int:
    """prod over positive coroots of <lam + rho, c> / <rho, c>."""
    num = den = 1
    for c in positive_roots(transpose(a)):
        num *= sum((x + 1) * y for x, y in zip(lam, c))
        den *= sum(c)
    assert num % den == 0
    return num // den


def weights_by_brute_force(a, lam) -> dict:
    """Weight multiplicities: Kostant's formula on dominant weights, spread by the Weyl group."""
    n = len(a)
    height = int(sum(weight_to_root(a, lam))) + 1
    group = weyl_group_with_signs(a)
    out = {}
    for coeffs in itertools.product(range(height + 1), repeat=n):
        mu = tuple(x - sum(coeffs[i] * a[k][i] for i in range(n)) for k, x in enumerate(lam))
        if any(x < 0 for x in mu):
            continue
        m = kostant_multiplicity(a, lam, mu)
        if m:
            for g in group:
                out[apply(g, mu)] = m
    return out


def character(mults: dict) -> Counter:
    return Counter(mults)


def multiset_convolution(x: dict, y: dict) -> Counter:
    out = Counter()
    for u, a in x.items():
        for v, b in y.items():
            out[tuple(p + q for p, q in zip(u, v))] += a * b
    return out


def newton_power_sums(eigs, length):
    return [sum(e ** k for e in eigs) for k in range(1, length + 1)]
