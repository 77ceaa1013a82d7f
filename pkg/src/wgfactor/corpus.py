"""Graph families for tests, benchmarks and demos.

Everything here is seeded and deterministic: the same arguments always give
the same graphs in the same order.
"""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx

from .graph import WeightedGraph, apsp, cartesian_product, is_minimal, minimalize


def path_graph(weights) -> WeightedGraph:
    weights = list(weights)
    return WeightedGraph(len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])


def cycle_graph(weights) -> WeightedGraph:
    weights = list(weights)
    n = len(weights)
    return WeightedGraph(n, [(i, (i + 1) % n, w) for i, w in enumerate(weights)])


def complete_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, [(i, j, w) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(leaves + 1, [(0, i, w) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int, rng: random.Random | None = None, weights=(1, 2, 3)) -> WeightedGraph:
    """Product of two weighted paths; unit weights when ``rng`` is None."""
    pick = (lambda: 1) if rng is None else (lambda: rng.choice(weights))
    return cartesian_product([
        path_graph([pick() for _ in range(rows - 1)]),
        path_graph([pick() for _ in range(cols - 1)]),
    ])


def random_tree(rng: random.Random, n: int, weights=(1, 2, 3)) -> WeightedGraph:
    return WeightedGraph(n, [(rng.randrange(i), i, rng.choice(weights)) for i in range(1, n)])


def random_connected(rng: random.Random, n: int, p: float = 0.4, weights=(1, 2, 3)) -> WeightedGraph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    edges = {}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[rng.randrange(i)], order[i]
        edges[(min(u, v), max(u, v))] = rng.choice(weights)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges[(u, v)] = rng.choice(weights)
    return WeightedGraph(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


def random_minimal(rng: random.Random, n: int, p: float = 0.4, weights=(1, 2, 3, 4, 5)) -> WeightedGraph:
    return minimalize(random_connected(rng, n, p, weights))


def random_prime(rng: random.Random, max_n: int = 5, weights=(1, 2, 3), tries: int = 1000) -> WeightedGraph:
    """Random connected graph with 2..max_n vertices that has no nontrivial factorization."""
    from .decompose import is_prime

    for _ in range(tries):
        g = random_connected(rng, rng.randint(2, max_n), rng.random() * 0.6, weights)
        if is_prime(g):
            return g
    raise RuntimeError("no prime graph found")


def random_permutation(rng: random.Random, g: WeightedGraph) -> WeightedGraph:
    order = list(range(g.n))
    rng.shuffle(order)
    edges = list(range(g.m))
    rng.shuffle(edges)
    return g.permuted(order, edges)


def random_walk(rng: random.Random, g: WeightedGraph, start: int, end: int, steps: int) -> list[int]:
    """Walk of about ``steps`` random moves from ``start``, then a BFS path to ``end``."""
    walk = [start]
    for _ in range(steps):
        walk.append(rng.choice(list(g.neighbors(walk[-1]))))
    prev = {walk[-1]: None}
    frontier = [walk[-1]]
    while end not in prev:
        nxt = []
        for u in frontier:
            nbrs = list(g.neighbors(u))
            rng.shuffle(nbrs)
            for v in nbrs:
                if v not in prev:
                    prev[v] = u
                    nxt.append(v)
        frontier = nxt
    tail = []
    x = end
    while x != walk[-1]:
        tail.append(x)
        x = prev[x]
    return walk + tail[::-1]


def atlas_graphs(max_n: int = 6) -> Iterator[WeightedGraph]:
    """Every connected simple graph on 2..max_n vertices, up to isomorphism."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for h in nx.graph_atlas_g():
        if 2 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield WeightedGraph(h.number_of_nodes(), [(u, v, 1) for u, v in h.edges()])


def sweep_corpus(
    max_n: int = 6,
    weights=(1, 2, 3),
    limit: int = 5000,
    seed: int = 0,
    exhaustive_up_to: int = 729,
    samples_per_graph: int = 120,
) -> list[WeightedGraph]:
    """Minimal weightings of all small connected graphs, capped at ``limit``.

    Each unweighted shape gets every weighting when there are at most
    ``exhaustive_up_to`` of them, otherwise ``samples_per_graph`` random
    ones. Only minimal weightings are kept; if more than ``limit`` remain a
    seeded sample of them is returned in generation order.
    """
    rng = random.Random(seed)
    out = []
    for shape in atlas_graphs(max_n):
        m = shape.m
        if len(weights) ** m <= exhaustive_up_to:
            assignments = _all_assignments(weights, m)
        else:
            seen = set()
            assignments = []
            for _ in range(samples_per_graph):
                a = tuple(rng.choice(weights) for _ in range(m))
                if a not in seen:
                    seen.add(a)
                    assignments.append(a)
        for a in assignments:
            g = WeightedGraph(shape.n, [(u, v, w) for (u, v, _), w in zip(shape.edges, a)])
            if is_minimal(g, apsp(g)):
                out.append(g)
    if len(out) > limit:
        keep = sorted(rng.sample(range(len(out)), limit))
        out = [out[i] for i in keep]
    return out


def _all_assignments(weights, m):
    if m == 0:
        return [()]
    return [a + (w,) for a in _all_assignments(weights, m - 1) for w in weights]


def random_minimal_corpus(count: int = 1000, max_n: int = 12, seed: int = 1) -> list[WeightedGraph]:
    rng = random.Random(seed)
    return [random_minimal(rng, rng.randint(2, max_n), rng.uniform(0.1, 0.7)) for _ in range(count)]
