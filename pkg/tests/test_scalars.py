from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, scalars
from oracles import scalar_to_sympy, schur_recursive, sympy_equal
from twistcrit.scalars import (I, INV_SQRT_MINUS_TWO, ONE, SQRT2, SQRT_MINUS_TWO, ZERO, ZETA,
                               MultiPoly, Scalar, scalar_arith, schur, symbols)
import sympy as sp


def test_fixed_roots():
    assert ZETA ** 4 == -1
    assert I * I == -1
    assert SQRT2 * SQRT2 == 2
    assert SQRT_MINUS_TWO * SQRT_MINUS_TWO == -2
    assert INV_SQRT_MINUS_TWO * INV_SQRT_MINUS_TWO == Fraction(-1, 2)


def test_scalar_arith_examples():
    assert scalar_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    assert scalar_arith(ZETA ** 2, ZETA ** 2, "*") == -1
    with pytest.raises(ZeroDivisionError):
        scalar_arith(ONE, ZERO, "/")


@given(scalars(), scalars())
def test_product_matches_radicals(a, b):
    assert sympy_equal(scalar_to_sympy(a * b), scalar_to_sympy(a) * scalar_to_sympy(b))


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(scalars())
def test_inverse(a):
    if a:
        assert a * a.inverse() == ONE
        assert sympy_equal(scalar_to_sympy(a.inverse()), 1 / scalar_to_sympy(a))


@given(scalars())
def test_json_round_trip(a):
    assert Scalar.from_json(a.to_json()) == a


@given(rationals, rationals)
def test_rational_embedding(x, y):
    assert Scalar.coerce(x) + y == x + y
    assert Scalar.coerce(x) * y == x * y
    assert hash(Scalar.coerce(x)) == hash(x)


def test_from_json_rejects_garbage():
    for bad in ("a/b", [1, 2], {"x": 1}, True):
        with pytest.raises((ValueError, TypeError)):
            Scalar.from_json(bad)


def test_polynomial_division_exact_and_inexact():
    x, y = symbols(["x", "y"])
    p = (x + y * 2) * (x * x - y)
    assert p / (x + y * 2) == x * x - y
    with pytest.raises(ValueError):
        (x * x + 1) / (x + y)


@given(st.lists(rationals, min_size=5, max_size=5), st.integers(0, 5))
def test_schur_matches_recursion(xs, n):
    expected = schur_recursive(n, [sp.Rational(v.numerator, v.denominator) for v in xs])
    assert schur(n, xs) == Fraction(int(sp.numer(expected)), int(sp.denom(expected)))


def test_schur_symbolic():
    x1, x2, x3 = symbols(["x1", "x2", "x3"])
    assert schur(2, [x1, x2]) == x1 * x1 * Fraction(1, 2) + x2 * Fraction(1, 2)
    assert schur(3, [x1, x2, x3]) == x1 ** 3 * Fraction(1, 6) + x1 * x2 * Fraction(1, 2) + x3 * Fraction(1, 3)


@given(rationals, rationals)
def test_evaluate(a, b):
    x, y = symbols(["x", "y"])
    p = x * x * 3 - x * y + 7
    assert p.evaluate({"x": a, "y": b}) == 3 * a * a - a * b + 7
    assert MultiPoly.const(a).constant_value() == a
