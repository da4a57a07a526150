from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ffram.qpoly import ONE, ZERO, QPolynomial

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(QPolynomial)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a * ONE == a and a + ZERO == a
    assert a - a == ZERO


@given(polys, polys)
def test_divide_exact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divide_exact(b) == a


@given(polys, st.integers(2, 9))
def test_evaluate_matches_float(a, q):
    exact = a.evaluate(q)
    assert abs(float(exact) - a.evaluate_float(q)) < 1e-6 * max(1, abs(a.evaluate_float(q)))


def test_examples():
    p = QPolynomial.from_q_coefficients([1, 0, 2])
    assert p.evaluate(3) == 19
    assert QPolynomial.q_power(-1).evaluate(4) == Fraction(1, 4)
    half = QPolynomial({1: 1, -1: 1})
    assert half.evaluate(4) == Fraction(5, 2)
    assert half.evaluate(3) == sympy.sqrt(3) + 1 / sympy.sqrt(3)
    assert p.invert_variable().evaluate(2) == Fraction(3, 2)
    assert p.at_one() == 3
    assert half.to_json() == [["-1/2", 1], ["1/2", 1]]


def test_divide_inexact():
    with pytest.raises(ValueError):
        QPolynomial.from_q_coefficients([1, 1]).divide_exact(QPolynomial.from_q_coefficients([0, 2]))
    with pytest.raises(ZeroDivisionError):
        ONE.divide_exact(ZERO)


def test_integer_coefficients_only():
    with pytest.raises(ValueError):
        QPolynomial({0: 0.5})
