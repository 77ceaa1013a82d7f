import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wgfactor.corpus import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected,
    random_permutation,
    random_tree,
    star_graph,
)
from wgfactor.errors import (
    DisconnectedGraphError,
    DistanceOverflowError,
    InvalidGraphError,
    MalformedProductEdgeError,
)
from wgfactor.graph import (
    UNREACHABLE,
    ProductDistances,
    WeightedGraph,
    apsp,
    cartesian_product,
    graphs_isomorphic,
    is_isometric_subgraph,
    is_minimal,
    minimalize,
    non_minimal_edges,
    parent_edge,
    product_coordinates,
    product_vertex,
)

from conftest import bellman_ford, connected_graphs


def triangle(a, b, c):
    return WeightedGraph(["a", "b", "c"], [(0, 1, a), (1, 2, b), (0, 2, c)])


class TestWeightedGraph:
    def test_basic(self):
        g = WeightedGraph(["x", "y", "z"], [(1, 0, 4), (1, 2, 1)])
        assert g.n == 3 and g.m == 2
        assert g.edges[0] == (0, 1, 4)
        assert g.weight(0, 1) == g.weight(1, 0) == 4
        assert g.index("z") == 2
        assert g.degree(1) == 2
        assert g.total_weight() == 5

    def test_duplicate_same_weight_is_merged(self):
        g = WeightedGraph(2, [(0, 1, 3), (1, 0, 3)])
        assert g.m == 1

    def test_conflicting_duplicate(self):
        with pytest.raises(InvalidGraphError, match="conflicting"):
            WeightedGraph(2, [(0, 1, 3), (1, 0, 2)])

    @pytest.mark.parametrize("edge", [(0, 0, 1), (0, 1, 0), (0, 1, -2), (0, 1, 1.5), (0, 5, 1), (0, 1, True)])
    def test_rejects_bad_edges(self, edge):
        with pytest.raises(InvalidGraphError):
            WeightedGraph(2, [edge])

    def test_from_labeled_edges(self):
        g = WeightedGraph.from_labeled_edges([("p", "q", 2), ("q", "r", 1)])
        assert g.labels == ("p", "q", "r")
        with pytest.raises(InvalidGraphError):
            WeightedGraph.from_labeled_edges([("p", "s", 1)], vertices=["p", "q"])

    def test_equality_ignores_edge_order(self):
        a = WeightedGraph(3, [(0, 1, 1), (1, 2, 2)])
        b = WeightedGraph(3, [(2, 1, 2), (0, 1, 1)])
        assert a == b and hash(a) == hash(b)

    def test_arrays_read_only(self):
        eu, ev, ew = path_graph([1, 2]).arrays
        with pytest.raises(ValueError):
            ew[0] = 9


class TestApsp:
    def test_k2(self):
        assert apsp(path_graph([7]))[0, 1] == 7

    def test_path(self):
        assert apsp(path_graph([2, 3]))[0, 2] == 5

    def test_weighted_cycle_opposite(self):
        d = apsp(cycle_graph([1, 2, 1, 2]))
        assert d[0, 2] == 3 and d[1, 3] == 3

    def test_disconnected_is_reported(self):
        d = apsp(WeightedGraph(3, [(0, 1, 1)]))
        assert not d.connected
        assert d[0, 2] == UNREACHABLE

    def test_overflow(self):
        with pytest.raises(DistanceOverflowError):
            apsp(path_graph([2**52, 2**52]))

    @given(connected_graphs(max_n=8))
    def test_matches_bellman_ford(self, g):
        want = bellman_ford(g)
        got = apsp(g).matrix
        for u in range(g.n):
            for v in range(g.n):
                assert got[u, v] == want[u][v]

    @given(connected_graphs(max_n=8))
    def test_metric_axioms(self, g):
        D = apsp(g).matrix
        assert np.all(np.diag(D) == 0)
        assert np.array_equal(D, D.T)
        for k in range(g.n):
            assert np.all(D <= D[:, [k]] + D[[k], :])
        for u, v, w in g.edges:
            assert D[u, v] <= w


class TestMinimality:
    def test_examples(self):
        assert is_minimal(triangle(1, 1, 2))
        assert not is_minimal(triangle(1, 1, 3))
        assert non_minimal_edges(triangle(1, 1, 3)) == [2]

    def test_tree_is_minimal(self, rng):
        for _ in range(20):
            assert is_minimal(random_tree(rng, rng.randint(1, 10)))

    def test_minimalize_examples(self):
        m = minimalize(triangle(1, 1, 3))
        assert m == WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
        assert minimalize(triangle(1, 1, 2)) == triangle(1, 1, 2)
        assert minimalize(star_graph(3)) == star_graph(3)

    def test_minimalize_keeps_labels(self):
        assert minimalize(triangle(1, 1, 3)).labels == ("a", "b", "c")

    def test_minimalize_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            minimalize(WeightedGraph(3, [(0, 1, 1)]))

    @given(connected_graphs(max_n=9, weights=(1, 2, 3, 4, 5, 6)))
    def test_minimalize_idempotent_and_metric_preserving(self, g):
        m = minimalize(g)
        assert is_minimal(m)
        assert minimalize(m) == m
        assert np.array_equal(apsp(m).matrix, apsp(g).matrix)


class TestProduct:
    def test_k2_squared_is_c4(self):
        k2 = path_graph([1])
        p = cartesian_product([k2, k2])
        assert (p.n, p.m) == (4, 4)
        assert graphs_isomorphic(p, cycle_graph([1, 1, 1, 1])) is not None

    def test_k1_identity(self, rng):
        g = random_connected(rng, 6)
        assert graphs_isomorphic(cartesian_product([WeightedGraph(1), g]), g) is not None

    def test_ladder_counts(self):
        p = cartesian_product([path_graph([1, 1]), path_graph([1])])
        assert (p.n, p.m) == (6, 7)

    def test_labels_are_tuples(self):
        a = WeightedGraph(["x", "y"], [(0, 1, 1)])
        p = cartesian_product([a, a])
        assert p.labels == (("x", "x"), ("x", "y"), ("y", "x"), ("y", "y"))

    def test_empty(self):
        with pytest.raises(InvalidGraphError):
            cartesian_product([])

    def test_vertex_coordinates_round_trip(self):
        fs = [path_graph([1, 1]), path_graph([1]), cycle_graph([1, 1, 1])]
        for v in range(cartesian_product(fs).n):
            assert product_vertex(fs, product_coordinates(fs, v)) == v

    def test_parent_edge_examples(self):
        k2 = path_graph([1])
        fs = [k2, k2]
        p = cartesian_product(fs)
        e1 = p.edge_id(product_vertex(fs, (0, 0)), product_vertex(fs, (1, 0)))
        e2 = p.edge_id(product_vertex(fs, (1, 0)), product_vertex(fs, (1, 1)))
        assert parent_edge(p, fs, e1) == (0, 0)
        assert parent_edge(p, fs, e2) == (1, 0)
        fs = [path_graph([1, 1]), k2]
        p = cartesian_product(fs)
        e = p.edge_id(product_vertex(fs, (1, 0)), product_vertex(fs, (2, 0)))
        assert parent_edge(p, fs, e) == (0, fs[0].edge_id(1, 2))

    def test_parent_edge_malformed(self):
        k2 = path_graph([1])
        fs = [k2, k2]
        bad = WeightedGraph(4, [(0, 3, 1)])
        with pytest.raises(MalformedProductEdgeError):
            parent_edge(bad, fs, 0)

    @given(connected_graphs(max_n=4), connected_graphs(max_n=4))
    def test_distance_is_additive(self, a, b):
        p = cartesian_product([a, b])
        dp, da, db = apsp(p), apsp(a), apsp(b)
        for x in range(p.n):
            for y in range(p.n):
                (i, j), (k, l) = product_coordinates([a, b], x), product_coordinates([a, b], y)
                assert dp[x, y] == da[i, k] + db[j, l]
        pd = ProductDistances([a, b])
        idx = np.arange(p.n)
        assert np.array_equal(pd[np.ix_(idx, idx)], dp.matrix)

    @given(connected_graphs(max_n=4), connected_graphs(max_n=4))
    def test_commutative(self, a, b):
        assert graphs_isomorphic(cartesian_product([a, b]), cartesian_product([b, a])) is not None

    @given(connected_graphs(max_n=3), connected_graphs(max_n=3), connected_graphs(max_n=3))
    def test_associative(self, a, b, c):
        left = cartesian_product([cartesian_product([a, b]), c])
        right = cartesian_product([a, cartesian_product([b, c])])
        assert graphs_isomorphic(left, right) is not None


class TestIsomorphism:
    def test_examples(self):
        k2 = path_graph([1])
        assert graphs_isomorphic(cycle_graph([1] * 4), cartesian_product([k2, k2])) is not None
        assert graphs_isomorphic(cycle_graph([1, 2, 1, 2]), cycle_graph([1, 1, 2, 2])) is None

    def test_returned_map_is_isomorphism(self, rng):
        for _ in range(30):
            g = random_connected(rng, rng.randint(1, 9))
            h = random_permutation(rng, g)
            f = graphs_isomorphic(g, h)
            assert f is not None and sorted(f) == list(range(g.n))
            for u, v, w in g.edges:
                assert h.has_edge(f[u], f[v]) and h.weight(f[u], f[v]) == w

    def test_size_mismatch(self):
        assert graphs_isomorphic(path_graph([1]), path_graph([1, 1])) is None

    def test_regular_non_isomorphic(self):
        # two 3-regular graphs on 6 vertices: prism vs K_{3,3}
        prism = cartesian_product([complete_graph(3), path_graph([1])])
        k33 = WeightedGraph(6, [(i, j, 1) for i in range(3) for j in range(3, 6)])
        assert graphs_isomorphic(prism, k33) is None

    @given(connected_graphs(max_n=7), connected_graphs(max_n=7))
    def test_equivalence(self, g, h):
        assert graphs_isomorphic(g, g) is not None
        assert (graphs_isomorphic(g, h) is None) == (graphs_isomorphic(h, g) is None)


class TestIsometricSubgraph:
    def test_p3_in_c4(self):
        assert is_isometric_subgraph(path_graph([1, 1]), cycle_graph([1] * 4), [0, 1, 2])

    def test_k2_on_opposite_corners(self):
        assert not is_isometric_subgraph(path_graph([1]), cycle_graph([1] * 4), [0, 2])

    def test_identity(self, rng):
        g = random_connected(rng, 7)
        assert is_isometric_subgraph(g, g, list(range(g.n)))

    def test_not_injective(self):
        assert not is_isometric_subgraph(path_graph([1, 1]), cycle_graph([1] * 4), [0, 1, 0])

    def test_distance_shortcut_detected(self):
        # P4 into C4: edges map fine but the ends are adjacent in the host
        assert not is_isometric_subgraph(path_graph([1, 1, 1]), cycle_graph([1] * 4), [0, 1, 2, 3])

    def test_weight_mismatch(self):
        assert not is_isometric_subgraph(path_graph([2]), cycle_graph([1] * 4), [0, 1])

    @pytest.mark.parametrize("mapping", [[0, 9], [0], [-1, 0]])
    def test_bad_map(self, mapping):
        with pytest.raises(InvalidGraphError):
            is_isometric_subgraph(path_graph([1]), cycle_graph([1] * 4), mapping)
