import random

import pytest
from hypothesis import given

from wgfactor.corpus import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected,
    random_permutation,
    random_prime,
    star_graph,
)
from wgfactor.decompose import (
    FACTORIZATION,
    PSEUDOFACTORIZATION,
    Decomposition,
    decompose_over,
    factor_multiset_isomorphic,
    factorize,
    is_irreducible,
    is_prime,
    parent_factors,
    pseudofactorize,
    verify_decomposition,
)
from wgfactor.errors import (
    DisconnectedGraphError,
    InvalidGraphError,
    NonMinimalGraphError,
    VerificationError,
    WeightMismatchError,
)
from wgfactor.graph import WeightedGraph, apsp, cartesian_product, graphs_isomorphic, minimalize
from wgfactor.relations import EquivalenceClasses, factor_classes, theta_classes

from conftest import connected_graphs, minimal_graphs

K2 = path_graph([1])


def k2(w=1):
    return path_graph([w])


def triangle(a, b, c):
    return WeightedGraph(3, [(0, 1, a), (1, 2, b), (0, 2, c)])


class TestDecomposeOver:
    def test_p3(self, p3):
        d = apsp(p3)
        pieces = decompose_over(p3, d, theta_classes(p3, d))
        assert [p.component for p in pieces] == [(0, 1, 1), (0, 0, 1)]
        assert all(p.quotient == k2() for p in pieces)

    def test_weighted_c4(self):
        g = cycle_graph([1, 2, 1, 2])
        d = apsp(g)
        pieces = decompose_over(g, d, factor_classes(g, d))
        assert [p.quotient for p in pieces] == [k2(1), k2(2)]

    def test_single_edge(self):
        g = k2(5)
        d = apsp(g)
        (piece,) = decompose_over(g, d, theta_classes(g, d))
        assert piece.quotient == k2(5)

    def test_weight_mismatch_is_reported(self):
        # opposite sides with different weights, forced into one class
        g = cycle_graph([1, 1, 2, 1])
        d = apsp(g)
        classes = EquivalenceClasses.from_labels([0, 1, 0, 1])
        with pytest.raises(WeightMismatchError) as info:
            decompose_over(g, d, classes)
        assert info.value.class_id == 0
        assert sorted(info.value.weights) == [1, 2]

    def test_non_separating_class(self, c4):
        d = apsp(c4)
        with pytest.raises(InvalidGraphError):
            decompose_over(c4, d, EquivalenceClasses.from_labels([0, 1, 1, 1]))


class TestPseudofactorize:
    def test_p3(self, p3):
        dec = pseudofactorize(p3)
        assert dec.mode == PSEUDOFACTORIZATION
        assert dec.factors == (k2(), k2())
        assert dec.map == ((0, 0), (1, 0), (1, 1))

    def test_star(self):
        g = star_graph(3)
        dec = pseudofactorize(g)
        assert len(dec) == 3 and all(f == k2() for f in dec.factors)
        assert verify_decomposition(g, dec)

    def test_triangle_irreducible(self):
        g = triangle(1, 1, 2)
        dec = pseudofactorize(g)
        assert len(dec) == 1
        assert graphs_isomorphic(dec.factors[0], g) is not None

    def test_k1(self):
        dec = pseudofactorize(WeightedGraph(1))
        assert dec.factors == (WeightedGraph(1),) and dec.map == ((0,),)

    def test_non_minimal(self):
        with pytest.raises(NonMinimalGraphError, match="minimalize") as info:
            pseudofactorize(triangle(1, 1, 3))
        assert info.value.edges == (2,)

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            pseudofactorize(WeightedGraph(3, [(0, 1, 1)]))

    def test_unknown_algorithm(self, p3):
        with pytest.raises(ValueError):
            pseudofactorize(p3, algorithm="magic")

    @given(minimal_graphs(max_n=9))
    def test_routes_agree(self, g):
        a = pseudofactorize(g, algorithm="gw")
        b = pseudofactorize(g, algorithm="feder-tree")
        assert a == b

    @given(minimal_graphs(max_n=9))
    def test_invariants(self, g):
        dec = pseudofactorize(g)
        assert verify_decomposition(g, dec)
        assert all(is_irreducible(f) for f in dec.factors)
        if g.n > 1:
            assert all(f.n > 1 for f in dec.factors)
        # parent-class consistency: a whole theta class lands in one factor
        owner = parent_factors(g, dec)
        for members in dec.classes.classes:
            assert len({owner[e] for e in members}) == 1


class TestFactorize:
    def test_c4(self, c4):
        dec = factorize(c4)
        assert dec.mode == FACTORIZATION
        assert dec.factors == (k2(), k2())

    def test_p3_prime(self, p3):
        dec = factorize(p3)
        assert len(dec) == 1 and dec.factors[0] == p3

    def test_ladder(self, p3):
        g = cartesian_product([p3, k2()])
        dec = factorize(g)
        assert factor_multiset_isomorphic(dec.factors, [p3, k2()])

    def test_non_minimal_allowed(self):
        g = triangle(1, 1, 3)
        dec = factorize(g)
        assert verify_decomposition(g, dec)

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            factorize(WeightedGraph(2))

    @given(connected_graphs(max_n=8))
    def test_invariants(self, g):
        dec = factorize(g)
        assert verify_decomposition(g, dec)
        assert all(is_prime(f) for f in dec.factors)
        assert graphs_isomorphic(g, cartesian_product(dec.factors)) is not None

    def test_round_trip(self, rng):
        for _ in range(15):
            a, b = random_prime(rng, 4), random_prime(rng, 4)
            dec = factorize(cartesian_product([a, b]))
            assert factor_multiset_isomorphic(dec.factors, [a, b])

    def test_three_factors(self):
        fs = [path_graph([1, 2]), k2(3), triangle(1, 1, 1)]
        dec = factorize(cartesian_product(fs))
        assert factor_multiset_isomorphic(dec.factors, fs)


class TestPredicates:
    @pytest.mark.parametrize("w", [1, 4])
    def test_k2(self, w):
        assert is_irreducible(k2(w)) and is_prime(k2(w))

    def test_examples(self, p3, c4):
        assert is_irreducible(triangle(1, 1, 2))
        assert not is_irreducible(c4)
        assert is_prime(p3)
        assert not is_prime(c4)

    def test_irreducible_needs_minimal(self):
        with pytest.raises(NonMinimalGraphError):
            is_irreducible(triangle(1, 1, 3))

    def test_prime_rejects_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            is_prime(WeightedGraph(2))


class TestVerify:
    def test_valid(self, p3, c4):
        assert verify_decomposition(p3, pseudofactorize(p3))
        assert verify_decomposition(c4, factorize(c4))

    def test_swapped_images(self, p3):
        dec = pseudofactorize(p3)
        bad = Decomposition(dec.mode, dec.factors, (dec.map[1], dec.map[0], dec.map[2]))
        assert not verify_decomposition(p3, bad)

    def test_out_of_range_and_arity(self, p3):
        dec = pseudofactorize(p3)
        assert not verify_decomposition(p3, Decomposition(dec.mode, dec.factors, ((0, 0), (1, 0), (2, 1))))
        assert not verify_decomposition(p3, Decomposition(dec.mode, dec.factors, ((0,), (1,), (1,))))
        assert not verify_decomposition(p3, Decomposition(dec.mode, dec.factors, dec.map[:2]))

    def test_wrong_graph(self, p3, c4):
        assert not verify_decomposition(c4, Decomposition(FACTORIZATION, (p3,), ((0,), (1,), (2,), (0,))))

    def test_pseudo_is_not_a_factorization(self, p3):
        dec = pseudofactorize(p3)
        assert not verify_decomposition(p3, Decomposition(FACTORIZATION, dec.factors, dec.map))

    def test_self_check_raises(self, monkeypatch, p3):
        import wgfactor.decompose as mod

        monkeypatch.setattr(mod, "verify_decomposition", lambda *a, **k: False)
        with pytest.raises(VerificationError):
            mod.pseudofactorize(p3)
        assert mod.pseudofactorize(p3, verify=False).factors


def test_uniqueness_under_permutation(rng):
    for _ in range(25):
        g = random_connected(rng, rng.randint(2, 8))
        h = random_permutation(rng, g)
        assert factor_multiset_isomorphic(factorize(g).factors, factorize(h).factors)
        gm, hm = minimalize(g), minimalize(h)
        assert factor_multiset_isomorphic(pseudofactorize(gm).factors, pseudofactorize(hm).factors)


def test_factor_multiset_helper():
    assert factor_multiset_isomorphic([k2(1), k2(2)], [k2(2), k2(1)])
    assert not factor_multiset_isomorphic([k2(1), k2(1)], [k2(2), k2(1)])
    assert not factor_multiset_isomorphic([k2(1)], [k2(1), k2(1)])
