from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schreier_dimers.algebra import (
    MultiPoly,
    derivative,
    evaluate,
    exact_divide,
    normalize_sign,
    poly_sqrt,
    substitute,
    var,
)
from schreier_dimers.errors import InexactDivisionError, MissingVariableError, NotASquareError

a, b, c, d = var("a"), var("b"), var("c"), var("d")

exponents = st.tuples(*(st.integers(0, 3) for _ in range(4)))
polys = st.dictionaries(exponents, st.integers(-5, 5), max_size=5).map(MultiPoly)
nonzero_polys = polys.filter(bool)
points = st.fixed_dictionaries({x: st.fractions(-4, 4, max_denominator=5) for x in "abcd"})


def test_canonical_text_is_grlex():
    p = c ** 5 + a ** 5 + 2 * a ** 2 * b ** 2 * c ** 2 + b ** 5
    assert str(p) == "2*a^2*b^2*c^2 + a^5 + b^5 + c^5"
    assert str(MultiPoly()) == "0"
    assert str(-a + 3) == "-a + 3"


def test_parse_round_trip():
    text = "2*a^2*b^2*c^2 + a^5 + a^2*b^2*c - 7"
    assert str(MultiPoly.parse(text)) == text
    with pytest.raises(ValueError):
        MultiPoly.parse("a^x")


def test_degree_queries():
    p = a ** 3 * b + 2 * c
    assert p.total_degree() == 4
    assert p.degree("a") == 3
    assert p.variables() == ("a", "b", "c")
    assert not p.is_homogeneous()
    assert (a * b + c * d).is_homogeneous()


def test_evaluate_exact_and_missing_variable():
    assert evaluate(a ** 2 + b, {"a": Fraction(1, 2), "b": 3}) == Fraction(13, 4)
    with pytest.raises(MissingVariableError):
        evaluate(a + b, {"a": 1})


def test_substitute_is_simultaneous():
    p = a + 2 * b
    assert substitute(p, {"a": b, "b": a}) == b + 2 * a


def test_derivative():
    assert derivative(a ** 3 * b + b, "a") == 3 * a ** 2 * b
    assert derivative(c, "a") == MultiPoly()


def test_exact_divide():
    assert exact_divide((a + b) * (a - c), a + b) == a - c
    with pytest.raises(InexactDivisionError):
        exact_divide(a ** 2 + 1, a)


def test_poly_sqrt():
    assert poly_sqrt((a ** 2 + 3 * b * c) ** 2) == a ** 2 + 3 * b * c
    with pytest.raises(NotASquareError):
        poly_sqrt(a ** 2 + b)


def test_normalize_sign():
    assert normalize_sign(-a + b) == a - b


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
    assert evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt)


@settings(max_examples=50)
@given(polys, nonzero_polys)
def test_divide_recovers_factor(p, q):
    assert exact_divide(p * q, q) == p


@settings(max_examples=50)
@given(nonzero_polys)
def test_sqrt_of_square(p):
    assert poly_sqrt(p * p) == normalize_sign(p)


@given(polys)
def test_text_round_trip(p):
    assert MultiPoly.parse(str(p)) == p
