import json
from fractions import Fraction

import pytest

from schreier_dimers.algebra import MultiPoly, evaluate, var
from schreier_dimers.errors import BudgetExceededError, InvalidCoverError
from schreier_dimers.graphs import build, build_hanoi, build_sierpinski
from schreier_dimers.oracle import (
    BoundaryPolicy,
    DimerCover,
    boltzmann_probability,
    check_cover,
    class_partition,
    classify_cover,
    covers_to_jsonl,
    enumerate_covers,
    label_count_distribution,
    oracle_partition,
)
from schreier_dimers.recursions import basilica_closed, gasket_system, grig_closed, hanoi_system

a, b, c = var("a"), var("b"), var("c")


def test_grigorchuk_level_three():
    covers = enumerate_covers(build("grigorchuk", 3))
    assert len(covers) == 1
    assert covers[0].weight == a ** 4


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_closed_forms(n):
    assert oracle_partition(build("grigorchuk", n)) == grig_closed(n)
    assert oracle_partition(build("basilica", n)) == basilica_closed(n)


def test_hanoi_level_one_covers():
    g = build_hanoi(1)
    covers = enumerate_covers(g)
    assert sorted(classify_cover(g, cv) for cv in covers) == ["I", "II", "III", "IV"]
    assert oracle_partition(g) == a * b * c + a ** 2 + b ** 2 + c ** 2


@pytest.mark.parametrize("n", [2, 3])
def test_hanoi_classes(n):
    vec = hanoi_system(n)
    assert class_partition(build_hanoi(n)) == dict(zip(("I", "II", "III", "IV"), vec.as_tuple()))


def test_hanoi_three_has_64_covers():
    assert len(enumerate_covers(build_hanoi(3))) == 64


@pytest.mark.parametrize("labeling", ["schreier", "rotation"])
@pytest.mark.parametrize("n", [2, 3])
def test_gasket_classes(labeling, n):
    got = class_partition(build_sierpinski(n, labeling))
    assert got == gasket_system(n, labeling).components


def test_plain_perfect_matchings_on_gasket():
    g = build_sierpinski(2)
    assert oracle_partition(g, BoundaryPolicy.perfect()) == gasket_system(2).components["t"]


def test_check_cover_rejects_bad_covers():
    g = build_hanoi(1)
    with pytest.raises(InvalidCoverError):
        check_cover(g, DimerCover((0, 1), (), a * b))
    with pytest.raises(InvalidCoverError):
        check_cover(g, DimerCover((), (("0", "a"),), a))
    cover = enumerate_covers(g)[0]
    with pytest.raises(InvalidCoverError):
        check_cover(g, DimerCover(cover.dimers, cover.closures, cover.weight * 2))


def test_budget():
    with pytest.raises(BudgetExceededError):
        oracle_partition(build_hanoi(3), budget=10)


def test_boltzmann_probabilities_sum_to_one():
    g = build("basilica", 3)
    pt = {"a": Fraction(2), "b": Fraction(1, 3)}
    covers = enumerate_covers(g)
    total = sum(boltzmann_probability(g, None, cv, pt) for cv in covers)
    assert total == 1


def test_label_count_distribution():
    dist = label_count_distribution(build_hanoi(2), "c")
    p = oracle_partition(build_hanoi(2))
    assert sum(dist.values()) == evaluate(p, {"a": 1, "b": 1, "c": 1})
    # specializing a = b = 1 in the level-two partition function gives 2 + c + 4c^2 + c^5
    assert dist == {0: 2, 1: 1, 2: 4, 5: 1}


def test_jsonl_is_deterministic():
    g = build_hanoi(1)
    text = covers_to_jsonl(g, enumerate_covers(g))
    assert text == covers_to_jsonl(g, enumerate_covers(g))
    rows = [json.loads(line) for line in text.splitlines()]
    assert [r["class"] for r in rows] == ["IV", "III", "II", "I"]


def test_label_count_on_cover():
    g = build_hanoi(1)
    cover = next(cv for cv in enumerate_covers(g) if classify_cover(g, cv) == "I")
    assert [cover.label_count(g, x) for x in "abc"] == [1, 1, 1]
    assert isinstance(cover.weight, MultiPoly)
