"""Small exact linear algebra over the rationals."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest integral positive multiple of a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def zero_in_convex_hull(points: Sequence[Sequence[int]]) -> bool:
    """Exact test 0 in conv(points), via Caratheodory on affinely independent subsets."""
    pts = [tuple(p) for p in points]
    if not pts:
        return False
    if any(all(x == 0 for x in p) for p in pts):
        return True
    dim = len(pts[0])
    for k in range(2, min(len(pts), dim + 1) + 1):
        for subset in itertools.combinations(pts, k):
            # solve sum t_i p_i = 0, sum t_i = 1
            rows = [[p[j] for p in subset] for j in range(dim)] + [[1] * k]
            aug = [row + [0] for row in rows[:-1]] + [rows[-1] + [1]]
            m, pivots = rref(aug)
            if k in pivots:
                continue  # inconsistent
            if len(pivots) < k:
                continue  # dependent; a smaller subset covers it
            sol = [Fraction(0)] * k
            for i, pc in enumerate(pivots):
                sol[pc] = m[i][k]
            if all(t >= 0 for t in sol):
                return True
    return False
