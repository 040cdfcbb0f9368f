from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betaquantile.exactmath import BiPoly, Poly, bipoly_arith, bipoly_eval, rat_arith

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(small, min_size=0, max_size=5).map(Poly)
bipolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(-2, 3)), small, max_size=5
).map(BiPoly)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "-") == Fraction(1, 6)
    assert rat_arith(Fraction(2, 3), Fraction(3, 4), "*") == Fraction(1, 2)
    assert rat_arith(Fraction(2, 3), Fraction(4, 9), "/") == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        rat_arith(Fraction(1), Fraction(0), "/")


def test_poly_basics():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1
    assert Poly([0, 0]).is_zero()
    assert (Poly([1, 1]) ** 2) == Poly([1, 2, 1])
    assert Poly([1, 1])(Fraction(1, 2)) == Fraction(3, 2)
    # (1 + x) o (2x) = 1 + 2x
    assert Poly([1, 1]).compose(Poly([0, 2])) == Poly([1, 2])


def test_bipoly_examples():
    b, g = BiPoly.b(), BiPoly.gamma()
    expr = g * (b - 1) * Fraction(1, 2)
    assert expr.monomials() == [(0, 1, Fraction(-1, 2)), (1, 1, Fraction(1, 2))]
    assert bipoly_eval(expr, 3, 2) == 2
    assert (b - b).is_zero()
    inv = BiPoly.gamma(-1) * (b - 1)
    assert bipoly_eval(inv, 3, 4) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        bipoly_eval(inv, 3, 0)


@given(bipolys, bipolys, bipolys)
def test_bipoly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()
    assert p * 1 == p
    assert bipoly_arith(p, q, "+") == p + q


@given(polys, polys)
def test_poly_ring_axioms(p, q):
    assert p + q == q + p
    assert p * q == q * p
    assert (p - q) + q == p


@settings(max_examples=60)
@given(bipolys, bipolys, st.floats(0.3, 3.0), st.floats(0.3, 3.0))
def test_eval_is_multiplicative(p, q, b, g):
    lhs = bipoly_eval(p * q, b, g)
    rhs = bipoly_eval(p, b, g) * bipoly_eval(q, b, g)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


@given(bipolys, st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_substitute_b_matches_eval(p, bval):
    # evaluation is in floats, so compare with a tolerance
    g = Fraction(7, 3)
    lhs, rhs = bipoly_eval(p.substitute_b(bval), 0, g), bipoly_eval(p, bval, g)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
