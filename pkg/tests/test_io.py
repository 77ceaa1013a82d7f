import json
from fractions import Fraction

import pytest
from hypothesis import given

from wgfactor.corpus import cycle_graph, path_graph
from wgfactor.decompose import factorize, pseudofactorize
from wgfactor.errors import DecompositionFormatError, InvalidGraphError
from wgfactor.graph import WeightedGraph, cartesian_product
from wgfactor.io import (
    RunReport,
    decomposition_from_dict,
    decomposition_to_dict,
    dumps,
    graph_from_dict,
    graph_to_dict,
    label_key,
    parse_weight,
    read_graph,
    to_dot,
    write_graph,
)

from conftest import connected_graphs


def p3_json():
    return {"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "w": 1}, {"u": "b", "v": "c", "w": 1}]}


def test_parse_basic():
    g, scale = graph_from_dict(p3_json())
    assert scale == 1
    assert g == WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])


@given(connected_graphs(max_n=8))
def test_round_trip(g):
    h, scale = graph_from_dict(json.loads(dumps(graph_to_dict(g))))
    assert scale == 1 and h == g and h.labels == g.labels and h.edges == g.edges


def test_tuple_labels_round_trip():
    g = cartesian_product([path_graph([1]), path_graph([2])])
    h, _ = graph_from_dict(json.loads(dumps(graph_to_dict(g))))
    assert h == g


@pytest.mark.parametrize(
    "w, want",
    [(3, Fraction(3)), ("3/2", Fraction(3, 2)), ("0.25", Fraction(1, 4)), (0.1, Fraction(1, 10))],
)
def test_weights(w, want):
    assert parse_weight(w) == want


@pytest.mark.parametrize("w", [0, -1, "x", True, None, float("inf"), "1/0"])
def test_bad_weights(w):
    with pytest.raises(InvalidGraphError):
        parse_weight(w)


def test_rational_scaling():
    obj = {"vertices": [0, 1, 2], "edges": [{"u": 0, "v": 1, "w": "1/2"}, {"u": 1, "v": 2, "w": 0.75}]}
    g, scale = graph_from_dict(obj)
    assert scale == 4
    assert [w for *_, w in g.edges] == [2, 3]


@pytest.mark.parametrize(
    "obj, where",
    [
        ([], "object"),
        ({"edges": []}, "vertices"),
        ({"vertices": ["a"], "edges": [{"u": "a", "w": 1}]}, "edges[0]"),
        ({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": -1}]}, "edges[0].w"),
        ({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "z", "w": 1}]}, "'z'"),
        ({"vertices": ["a", "a"], "edges": []}, "duplicate"),
        ({"vertices": [None], "edges": []}, "vertices[0]"),
        ({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": 1}, {"u": "b", "v": "a", "w": 2}]}, "conflicting"),
    ],
)
def test_diagnostics(obj, where):
    with pytest.raises(InvalidGraphError, match=where.replace("[", r"\[").replace("]", r"\]")):
        graph_from_dict(obj)


def test_read_reports_position(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"vertices": [1],\n "edges": [}')
    with pytest.raises(InvalidGraphError, match="line 2"):
        read_graph(p)


def test_write_read(tmp_path):
    g = cycle_graph([1, 2, 1, 2])
    write_graph(g, tmp_path / "c.json")
    assert read_graph(tmp_path / "c.json") == (g, 1)


class TestDecompositionJson:
    def test_shape(self):
        g, _ = graph_from_dict(p3_json())
        obj = decomposition_to_dict(g, pseudofactorize(g))
        assert set(obj) == {"mode", "factors", "map", "scale"}
        assert obj["map"] == {"a": [0, 0], "b": [1, 0], "c": [1, 1]}
        assert obj["mode"] == "pseudofactorization"

    def test_round_trip(self):
        g = cartesian_product([path_graph([1, 2]), path_graph([3])])
        dec = factorize(g)
        back = decomposition_from_dict(json.loads(dumps(decomposition_to_dict(g, dec))), g)
        assert back.factors == dec.factors and back.map == dec.map and back.mode == dec.mode

    def test_arity_mismatch(self):
        g, _ = graph_from_dict(p3_json())
        obj = decomposition_to_dict(g, pseudofactorize(g))
        obj["map"]["b"] = [1]
        with pytest.raises(DecompositionFormatError, match="coordinates"):
            decomposition_from_dict(obj, g)

    def test_missing_and_unknown_vertices(self):
        g, _ = graph_from_dict(p3_json())
        obj = decomposition_to_dict(g, pseudofactorize(g))
        del obj["map"]["c"]
        with pytest.raises(DecompositionFormatError, match="'c'"):
            decomposition_from_dict(obj, g)
        obj["map"]["zz"] = [0, 0]
        with pytest.raises(DecompositionFormatError):
            decomposition_from_dict(obj, g)

    def test_deterministic_text(self):
        g, _ = graph_from_dict(p3_json())
        a = dumps(decomposition_to_dict(g, pseudofactorize(g)))
        b = dumps(decomposition_to_dict(g, pseudofactorize(g, algorithm="feder-tree")))
        assert a == b


def test_label_key():
    assert label_key("a") == "a"
    assert label_key(3) == "3"
    assert label_key(("a", 1)) == '["a", 1]'


def test_dot():
    g = cycle_graph([1, 1, 1, 1])
    dec = pseudofactorize(g)
    text = to_dot(g, dec.classes)
    assert text.startswith("graph G {")
    assert text.count(" -- ") == 4
    assert text.count('class="0"') == 2 and text.count('class="1"') == 2


def test_report_dict():
    r = RunReport("factor", "abc", "gw", {"apsp": 1.0}, {"x": 1}, True)
    assert r.to_dict()["verdict"] is True
    assert json.loads(dumps(r.to_dict()))["timings_ms"] == {"apsp": 1.0}
