from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schreier_dimers.algebra import MultiPoly, evaluate, var
from schreier_dimers.errors import UnsupportedLevelError, UnsupportedWeightsError
from schreier_dimers.recursions import (
    basilica_closed,
    gasket_closed,
    gasket_closed_types,
    gasket_system,
    grig_closed,
    hanoi_system,
    hanoi_uniform_closed,
    hanoi_uniform_types,
    limit_sequence,
    thermo_limit,
    vertex_count,
)

a, b, c = var("a"), var("b"), var("c")
at_least_one = st.fractions(min_value=1, max_value=6, max_denominator=10)

# n = 2 Hanoi partition function, counted by the oracle
HANOI_2 = MultiPoly.parse("2*a^2*b^2*c^2 + a^5 + a^2*b^2*c + a^2*b*c^2 + a*b^2*c^2 + b^5 + c^5")


def test_closed_forms():
    assert grig_closed(3) == a ** 4
    assert basilica_closed(3) == 8 * b ** 4
    assert basilica_closed(4) == 64 * b ** 8


def test_hanoi_level_two():
    vec = hanoi_system(2)
    assert vec.total == HANOI_2
    assert vec.phi_II == c ** 5 + a ** 2 * b ** 2 * c


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hanoi_uniform(n):
    vec = hanoi_system(n, {"a": a, "b": a, "c": a})
    assert vec.total == hanoi_uniform_closed(n)
    phi_1, phi_2 = hanoi_uniform_types(n)
    assert (vec.phi_I, vec.phi_II, vec.phi_III, vec.phi_IV) == (phi_1, phi_2, phi_2, phi_2)


def test_hanoi_numeric_matches_symbolic():
    pt = {"a": Fraction(2, 3), "b": Fraction(5), "c": Fraction(1, 7)}
    assert hanoi_system(4, pt).total == evaluate(hanoi_system(4).total, pt)


@pytest.mark.parametrize("labeling", ["schreier", "rotation"])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gasket_system_matches_closed_form(labeling, n):
    vec = gasket_system(n, labeling)
    assert vec.components == gasket_closed_types(n, labeling)


def test_gasket_values():
    assert gasket_closed(2) == 2 * a * b * c + 2 * a * b + 2 * a * c + 2 * b * c
    assert gasket_closed(2, "rotation") == a ** 3 + b ** 3 + 3 * a * c + 3 * b * c
    with pytest.raises(UnsupportedLevelError):
        gasket_system(1, "rotation")
    with pytest.raises(UnsupportedWeightsError):
        gasket_system(3, "directional")


def test_vertex_counts():
    assert [vertex_count("gasket", n) for n in (1, 2, 3, 4)] == [3, 6, 15, 42]
    assert vertex_count("hanoi", 3) == 27


def test_limit_text():
    assert str(thermo_limit("grigorchuk")) == "1/2*log(a)"
    assert str(thermo_limit("basilica")) == "1/3*log(2) + 1/2*log(b)"
    assert str(thermo_limit("hanoi")) == "1/6*log(2) + 1/2*log(a)"
    assert str(thermo_limit("gasket")) == "1/6*log(4*a*b*c)"


def test_limit_requires_positive_weights():
    with pytest.raises(UnsupportedWeightsError):
        thermo_limit("grigorchuk", {"a": 0})
    with pytest.raises(UnsupportedWeightsError):
        thermo_limit("hanoi", {"a": 1, "b": 2, "c": 1})


@pytest.mark.parametrize("family,labeling", [("gasket", "schreier"), ("gasket", "rotation"),
                                             ("basilica", "schreier"), ("hanoi", "schreier")])
def test_sequence_approaches_limit(family, labeling):
    w = {"a": 2, "b": 3, "c": 2} if family != "hanoi" else {"a": 2, "b": 2, "c": 2}
    seq = limit_sequence(family, w, 9, labeling)
    assert abs(seq.epsilon[-1] - thermo_limit(family, w, labeling).value) < 1e-2


@settings(max_examples=15, deadline=None)
@given(at_least_one, at_least_one, at_least_one)
def test_hanoi_sequence_decreases(x, y, z):
    seq = limit_sequence("hanoi", {"a": x, "b": y, "c": z}, 6)
    assert seq.decreasing


def test_sequence_csv():
    text = limit_sequence("grigorchuk", {"a": 1}, 3).to_csv()
    assert text.splitlines()[0] == "n,phi,epsilon"
    assert text.splitlines()[1] == "1,1,0.0"


def test_grigorchuk_limit_value():
    assert mpmath.almosteq(thermo_limit("grigorchuk", {"a": 4}).value, mpmath.log(2))
