import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schreier_dimers.algebra import evaluate, var
from schreier_dimers.errors import (
    CapExceededError,
    DimensionMismatchError,
    OddSizeError,
    SingularDenominatorError,
    UnsupportedLevelError,
)
from schreier_dimers.graphs import build
from schreier_dimers.kasteleyn import (
    MapState,
    determinant_exact,
    hanoi_reductions,
    oriented_matrix,
    partition_kasteleyn,
    pfaffian_exact,
    pfaffian_numeric,
    rational_map_step,
    theorem37_eval,
    verify_good_orientation,
)
from schreier_dimers.recursions import basilica_closed, grig_closed, hanoi_system

a, b, c = var("a"), var("b"), var("c")
positive = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=20)


@pytest.mark.parametrize("family,n", [("grigorchuk", 4), ("basilica", 4), ("hanoi", 2)])
def test_matrix_is_skew(family, n):
    m = oriented_matrix(family, n)
    assert m.is_skew()
    assert m.size == len(build(family, n).vertices)


def test_grigorchuk_entries_are_linear_forms():
    m = oriented_matrix("grigorchuk", 2)
    i, j = m.words.index("00"), m.words.index("01")
    assert m.entry(i, j) in (b + c, -(b + c))


@pytest.mark.parametrize("family,n", [("grigorchuk", 5), ("basilica", 5), ("hanoi", 3)])
def test_good_orientation(family, n):
    report = verify_good_orientation(oriented_matrix(family, n), build(family, n))
    assert report.passed, report.problems
    assert all(k % 2 for k in report.face_counts)


def test_label_flip_breaks_two_gon():
    m = oriented_matrix("grigorchuk", 3)
    g = build("grigorchuk", 3)
    face = g.faces[0]
    i, j = m.words.index(face.vertices[0]), m.words.index(face.vertices[1])
    label = g.edges[face.edges[0]].label
    report = verify_good_orientation(m.negate_label(i, j, label), g)
    assert not report.passed
    assert report.bad_faces == [0]


def test_pair_flip_on_basilica_square_fails():
    g = build("basilica", 3)
    m = oriented_matrix("basilica", 3)
    square = next(f for f in g.faces if len(f.vertices) == 4)
    i, j = m.words.index(square.vertices[0]), m.words.index(square.vertices[1])
    assert not verify_good_orientation(m.negate_pair(i, j), g).passed


def test_orientation_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        verify_good_orientation(oriented_matrix("grigorchuk", 3), build("grigorchuk", 4))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pfaffian_methods_agree(n):
    for family, closed in (("grigorchuk", grig_closed), ("basilica", basilica_closed)):
        m = oriented_matrix(family, n)
        pf = pfaffian_exact(m)
        assert pf == closed(n)
        assert pfaffian_exact(m, method="sqrt-det") == pf


def test_determinant_is_square_of_pfaffian():
    m = oriented_matrix("hanoi", 2).delete([0])
    assert determinant_exact(m.entries, m.size) == pfaffian_exact(m) ** 2


def test_pfaffian_guards():
    with pytest.raises(OddSizeError):
        pfaffian_exact(oriented_matrix("hanoi", 2))
    with pytest.raises(CapExceededError):
        pfaffian_exact(oriented_matrix("grigorchuk", 7))


@settings(max_examples=20, deadline=None)
@given(positive, positive, positive)
def test_numeric_pfaffian_matches_closed_form(x, y, z):
    pt = {"a": x, "b": y, "c": z, "d": Fraction(1)}
    assert pfaffian_numeric(oriented_matrix("basilica", 6), pt) == evaluate(basilica_closed(6), pt)


def test_numeric_examples():
    assert pfaffian_numeric(oriented_matrix("grigorchuk", 4), {"a": 2, "b": 1, "c": 1, "d": 1}) == 256
    m = oriented_matrix("basilica", 3)
    assert pfaffian_numeric(m, {"a": 1, "b": 1}) == 8


def test_reduction_sizes():
    assert hanoi_reductions(oriented_matrix("hanoi", 2)).sizes() == (8, 8, 8, 6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hanoi_kasteleyn_matches_system(n):
    assert partition_kasteleyn("hanoi", n) == hanoi_system(n).total


def test_map_step():
    s = rational_map_step(MapState.start(1, 1, 1))
    assert s.as_tuple() == (1, 1, 1, 1, 1, 1)
    s = rational_map_step(MapState.start(2, 1, 1))
    assert s.as_tuple() == (2, 1, 1, Fraction(17, 4), Fraction(5, 4), Fraction(5, 4))
    with pytest.raises(SingularDenominatorError):
        rational_map_step(MapState(1, 1, 1, -1, 1, 1))


def test_product_formula_values():
    assert theorem37_eval(3, 1, 1, 1) == 64
    assert theorem37_eval(4, 1, 1, 1) == 2 ** 15
    with pytest.raises(UnsupportedLevelError):
        theorem37_eval(2, 1, 1, 1)


def test_product_formula_random_points():
    rng = random.Random(7)
    for _ in range(5):
        x, y, z = (Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3))
        assert theorem37_eval(5, x, y, z) == hanoi_system(5, {"a": x, "b": y, "c": z}).total


def test_matrix_json():
    data = json.loads(oriented_matrix("grigorchuk", 2).to_json())
    assert data["size"] == 4
    assert data["order"] == "lex"
    assert {row[3] for row in data["entries"]} == {"a", "b", "c"}
