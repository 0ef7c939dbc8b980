import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schreier_dimers.errors import UnsupportedLevelError
from schreier_dimers.graphs import (
    FAMILIES,
    _signed_area2,
    basilica_action,
    basilica_census_closed,
    basilica_cycle_census,
    build,
    build_hanoi,
    build_sierpinski,
    contract_to_gasket,
    gasket_representative,
    grigorchuk_action,
    hanoi_action,
    words,
)


def test_words_are_lexicographic():
    assert words("01", 2) == ["00", "01", "10", "11"]
    assert len(words("012", 4)) == 81


@given(st.text("01", min_size=1, max_size=8), st.sampled_from("abcd"))
def test_grigorchuk_generators_are_involutions(w, gen):
    assert grigorchuk_action(gen, grigorchuk_action(gen, w)) == w


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("gen", ["a", "b"])
def test_basilica_generators_permute_level(n, gen):
    level = words("01", n)
    assert sorted(basilica_action(gen, w) for w in level) == level


@given(st.text("012", min_size=1, max_size=6), st.sampled_from("abc"))
def test_hanoi_moves_change_one_letter(w, gen):
    v = hanoi_action(gen, w)
    assert hanoi_action(gen, v) == w
    assert sum(x != y for x, y in zip(v, w)) <= 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_vertex_and_edge_counts(n):
    assert len(build("grigorchuk", n).vertices) == 2 ** n
    h = build_hanoi(n)
    assert len(h.vertices) == 3 ** n
    assert len(h.edges) == 3 * (3 ** n - 1) // 2
    assert len(h.loops) == 3
    g = build_sierpinski(n)
    assert len(g.vertices) == 3 * (3 ** (n - 1) + 1) // 2
    assert len(g.edges) == 3 ** n


@pytest.mark.parametrize("family", FAMILIES)
def test_face_walks_use_graph_edges(family):
    g = build(family, 3)
    for face in g.faces:
        k = len(face.vertices)
        for t, eid in enumerate(face.edges):
            e = g.edges[eid]
            assert {e.u, e.v} == {face.vertices[t], face.vertices[(t + 1) % k]}


@pytest.mark.parametrize("family", ["hanoi", "gasket"])
def test_faces_are_listed_clockwise(family):
    g = build(family, 3)
    for face in g.faces:
        assert _signed_area2([g.coords[v] for v in face.vertices]) < 0


def test_hanoi_face_census():
    census = build_hanoi(4).face_census()
    assert census == {3: 27, 6: 9, 12: 3, 24: 1}


def test_gasket_degrees():
    g = build_sierpinski(4)
    degrees = {v: g.degree(v) for v in g.vertices}
    assert {degrees[c] for c in g.corners} == {2}
    assert {d for v, d in degrees.items() if v not in g.corners} == {4}


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_basilica_cycle_census(n):
    g = build("basilica", n)
    census = basilica_cycle_census(g)
    assert census == basilica_census_closed(n)
    assert sum(sum(v.values()) for v in census.values()) == 2 ** (n - 1) + 1
    assert len(g.edges) == 3 * 2 ** (n - 1)


def test_gasket_representative_picks_smaller_word():
    assert gasket_representative("01") == "01"
    assert gasket_representative("12") == "10"
    assert gasket_representative("0021") == "0011"
    assert gasket_representative("0012") == "0012"
    assert gasket_representative("00") == "00"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_contraction_matches_direct_build(n):
    assert contract_to_gasket(build_hanoi(n)).structure_key() == build_sierpinski(n).structure_key()


def test_rotation_labeling_is_balanced():
    g = build_sierpinski(3, "rotation")
    assert g.label_counts() == {"a": 9, "b": 9, "c": 9}
    with pytest.raises(UnsupportedLevelError):
        build_sierpinski(1, "rotation")


def test_json_export():
    data = json.loads(build("grigorchuk", 2).to_json())
    assert data["level"] == 2
    assert data["vertices"] == ["00", "01", "10", "11"]
    assert ["00", "01", "b", 0] in data["edges"]
    assert build("hanoi", 2).to_json() == build("hanoi", 2).to_json()


def test_invalid_level():
    with pytest.raises(UnsupportedLevelError):
        build("hanoi", 0)
