"""Laurent polynomials in v = q^{1/2} with integer coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping


class QPolynomial:
    """Finitely supported map  v-exponent -> integer coefficient.

    ``QPolynomial.q_power(k)`` is q^k = v^{2k}.  Instances are immutable and
    hashable; arithmetic returns new instances with zero terms dropped.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        c = {}
        for e, a in (coefficients or {}).items():
            if a:
                if int(a) != a:
                    raise ValueError("coefficients must be integers")
                c[int(e)] = int(a)
        self._c = c

    @classmethod
    def constant(cls, a: int) -> "QPolynomial":
        return cls({0: a})

    @classmethod
    def q_power(cls, k: int, coeff: int = 1) -> "QPolynomial":
        return cls({2 * k: coeff})

    @classmethod
    def from_q_coefficients(cls, coeffs: Iterable[int]) -> "QPolynomial":
        """From [c0, c1, ...] meaning c0 + c1 q + ..."""
        return cls({2 * i: a for i, a in enumerate(coeffs)})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial.constant(other)
        return isinstance(other, QPolynomial) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPolynomial.constant(other)
        out = dict(self._c)
        for e, a in other._c.items():
            out[e] = out.get(e, 0) + a
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, QPolynomial) else QPolynomial.constant(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QPolynomial({e: a * other for e, a in self._c.items()})
        out: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + a1 * a2
        return QPolynomial(out)

    __rmul__ = __mul__

    def shift(self, v_exponent: int) -> "QPolynomial":
        """Multiply by v^k."""
        return QPolynomial({e + v_exponent: a for e, a in self._c.items()})

    def invert_variable(self) -> "QPolynomial":
        """Substitute q -> q^{-1}."""
        return QPolynomial({-e: a for e, a in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def in_q(self) -> bool:
        """True if only integral powers of q occur."""
        return all(e % 2 == 0 for e in self._c)

    def q_coefficients(self) -> list[tuple[Fraction | int, int]]:
        """Sorted (q-power, coefficient) pairs; half-integral powers as Fractions."""
        return [(e // 2 if e % 2 == 0 else Fraction(e, 2), a) for e, a in sorted(self._c.items())]

    def min_exponent(self) -> int:
        return min(self._c) if self._c else 0

    def max_exponent(self) -> int:
        return max(self._c) if self._c else 0

    def evaluate(self, q):
        """Exact value at a numeric q.

        Returns an int or Fraction when only integral q-powers occur (or q is a
        perfect square); otherwise a sympy expression in sqrt(q).
        """
        if self.in_q():
            total = Fraction(0)
            for e, a in self._c.items():
                total += a * Fraction(q) ** (e // 2)
            return int(total) if total.denominator == 1 else total
        qf = Fraction(q)
        rn, rd = math.isqrt(qf.numerator), math.isqrt(qf.denominator)
        if rn * rn == qf.numerator and rd * rd == qf.denominator:
            v = Fraction(rn, rd)
            total = sum((a * v ** e for e, a in self._c.items()), Fraction(0))
            return int(total) if total.denominator == 1 else total
        import sympy

        v = sympy.sqrt(sympy.Rational(qf.numerator, qf.denominator))
        return sympy.nsimplify(sum(a * v ** e for e, a in self._c.items()))

    def evaluate_float(self, q: float) -> float:
        v = math.sqrt(q)
        return float(sum(a * v ** e for e, a in self._c.items()))

    def divide_exact(self, other: "QPolynomial") -> "QPolynomial":
        """Exact division; raises ValueError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._c)
        quot: dict[int, int] = {}
        top_o = other.max_exponent()
        lead_o = other._c[top_o]
        kmin = self.min_exponent() - other.min_exponent()
        while rem:
            top = max(rem)
            if top - top_o < kmin:
                raise ValueError("not exactly divisible")
            a = rem[top]
            if a % lead_o:
                raise ValueError("not exactly divisible")
            c = a // lead_o
            k = top - top_o
            quot[k] = quot.get(k, 0) + c
            for e, b in other._c.items():
                rem[e + k] = rem.get(e + k, 0) - c * b
                if rem[e + k] == 0:
                    del rem[e + k]
        return QPolynomial(quot)

    def to_json(self) -> list[list]:
        return [[str(p) if isinstance(p, Fraction) else p, a] for p, a in self.q_coefficients()]

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for p, a in self.q_coefficients():
            if p == 0:
                terms.append(f"{a}")
            else:
                terms.append(f"{a}*q^{p}" if a != 1 else f"q^{p}")
        return " + ".join(terms)


ZERO = QPolynomial()
ONE = QPolynomial.constant(1)
