"""Weighted graphs, their shortest-path metric, and Cartesian products.

Vertices are dense integer ids ``0..n-1``; each carries an opaque label that is
only used for I/O. Edges are stored once as ``(u, v, w)`` with ``u < v`` and
ids ``0..m-1`` in input order. Weights are positive Python integers, since the
relations built on top of the metric are exact zero tests.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import (
    DisconnectedGraphError,
    DistanceOverflowError,
    InvalidGraphError,
    MalformedProductEdgeError,
)

# Entry used in a DistanceMatrix for pairs with no connecting path.
UNREACHABLE = -1

# Shortest paths are computed in float64, which is exact below 2**53.
_EXACT_LIMIT = 2**53


class WeightedGraph:
    """Undirected simple graph with positive integer edge weights.

    Parameters
    ----------
    vertices : int or sequence of hashable
        Either the vertex count or the vertex labels, in id order.
    edges : iterable of (u, v, w)
        Endpoints are vertex ids. ``(u, v, w)`` and ``(v, u, w)`` are the same
        edge; repeating an edge with the same weight is tolerated, with a
        different weight it is an error.
    """

    __slots__ = ("labels", "edges", "_adj", "_index", "_arrays")

    def __init__(self, vertices: int | Sequence[Hashable], edges: Iterable = ()):
        if isinstance(vertices, (int, np.integer)):
            labels = tuple(range(int(vertices)))
        else:
            labels = tuple(vertices)
        n = len(labels)
        adj: list[dict[int, int]] = [{} for _ in range(n)]
        kept = []
        for item in edges:
            try:
                u, v, w = item
            except (TypeError, ValueError):
                raise InvalidGraphError(f"edge {item!r} is not a (u, v, w) triple") from None
            u, v = _vertex_id(u, n), _vertex_id(v, n)
            w = _weight(w, (labels[u], labels[v]))
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {labels[u]!r}")
            if u > v:
                u, v = v, u
            if v in adj[u]:
                old = kept[adj[u][v]][2]
                if old != w:
                    raise InvalidGraphError(
                        f"conflicting weights {old} and {w} for edge "
                        f"{labels[u]!r}-{labels[v]!r}"
                    )
                continue
            eid = len(kept)
            kept.append((u, v, w))
            adj[u][v] = eid
            adj[v][u] = eid
        self.labels = labels
        self.edges = tuple(kept)
        self._adj = adj
        self._index = None
        self._arrays = None

    @classmethod
    def from_labeled_edges(cls, edges, vertices=None) -> "WeightedGraph":
        """Build a graph from ``(label_u, label_v, w)`` triples.

        Vertices appear in ``vertices`` order when given, otherwise in order
        of first appearance.
        """
        edges = list(edges)
        if vertices is None:
            seen = {}
            for u, v, _ in edges:
                seen.setdefault(u, None)
                seen.setdefault(v, None)
            vertices = list(seen)
        vertices = list(vertices)
        index = {}
        for i, label in enumerate(vertices):
            if label in index:
                raise InvalidGraphError(f"duplicate vertex label {label!r}")
            index[label] = i
        ids = []
        for u, v, w in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise InvalidGraphError(f"edge endpoint {missing!r} is not a vertex")
            ids.append((index[u], index[v], w))
        return cls(vertices, ids)

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> dict[int, int]:
        """Mapping neighbor id -> edge id. Do not mutate."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._adj[u][v]
        except KeyError:
            raise KeyError(f"no edge between vertices {u} and {v}") from None

    def weight(self, u: int, v: int) -> int:
        return self.edges[self.edge_id(u, v)][2]

    def index(self, label) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
            if len(self._index) != len(self.labels):
                raise InvalidGraphError("vertex labels are not unique")
        return self._index[label]

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Endpoint and weight arrays ``(eu, ev, ew)`` for vectorized work."""
        if self._arrays is None:
            if self.edges:
                eu, ev, ew = (np.array(col, dtype=np.int64) for col in zip(*self.edges))
            else:
                eu = ev = ew = np.zeros(0, dtype=np.int64)
            for a in (eu, ev, ew):
                a.flags.writeable = False
            self._arrays = (eu, ev, ew)
        return self._arrays

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs_order(self, 0)) == self.n

    # -- derived graphs ------------------------------------------------

    def permuted(self, vertex_order: Sequence[int], edge_order: Sequence[int] | None = None):
        """Return an isomorphic copy whose vertex ``i`` is old vertex ``vertex_order[i]``.

        ``edge_order`` optionally reorders the edge list the same way.
        """
        if sorted(vertex_order) != list(range(self.n)):
            raise InvalidGraphError("vertex_order is not a permutation")
        new_id = {old: new for new, old in enumerate(vertex_order)}
        edges = self.edges if edge_order is None else [self.edges[i] for i in edge_order]
        if len(edges) != self.m:
            raise InvalidGraphError("edge_order is not a permutation")
        return WeightedGraph(
            [self.labels[i] for i in vertex_order],
            [(new_id[u], new_id[v], w) for u, v, w in edges],
        )

    def without_edges(self, edge_ids: Iterable[int]) -> "WeightedGraph":
        drop = set(edge_ids)
        return WeightedGraph(
            self.labels, [e for i, e in enumerate(self.edges) if i not in drop]
        )

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.labels == other.labels and set(self.edges) == set(other.edges)

    def __hash__(self):
        return hash((self.labels, frozenset(self.edges)))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"


def _vertex_id(x, n):
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
        raise InvalidGraphError(f"vertex id {x!r} is not an integer")
    x = int(x)
    if not 0 <= x < n:
        raise InvalidGraphError(f"vertex id {x} out of range 0..{n - 1}")
    return x


def _weight(w, where):
    if isinstance(w, (bool, np.bool_)) or not isinstance(w, (int, np.integer)):
        raise InvalidGraphError(f"weight {w!r} on edge {where} is not an integer")
    w = int(w)
    if w <= 0:
        raise InvalidGraphError(f"weight {w} on edge {where} is not positive")
    return w


def _bfs_order(g: WeightedGraph, source: int) -> list[int]:
    seen = [False] * g.n
    seen[source] = True
    order = [source]
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if not seen[v]:
                seen[v] = True
                order.append(v)
                queue.append(v)
    return order


def bfs_order(g: WeightedGraph, source: int = 0) -> list[int]:
    """Vertices reachable from ``source`` in BFS order (neighbors by edge id)."""
    return _bfs_order(g, source)


# ---------------------------------------------------------------------------
# Shortest-path metric
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Exact all-pairs distances; unreachable pairs hold ``UNREACHABLE``."""

    matrix: np.ndarray
    connected: bool

    def __getitem__(self, index):
        return self.matrix[index]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.connected == other.connected and np.array_equal(self.matrix, other.matrix)


def apsp(g: WeightedGraph) -> DistanceMatrix:
    """All-pairs shortest paths by Dijkstra from every source."""
    n = g.n
    if g.total_weight() >= _EXACT_LIMIT:
        raise DistanceOverflowError(
            f"total edge weight {g.total_weight()} may exceed exact distance range"
        )
    if n == 0:
        return DistanceMatrix(np.zeros((0, 0), dtype=np.int64), True)
    eu, ev, ew = g.arrays
    csr = csr_matrix((ew.astype(np.float64), (eu, ev)), shape=(n, n))
    dist = dijkstra(csr, directed=False)
    reachable = np.isfinite(dist)
    out = np.full((n, n), UNREACHABLE, dtype=np.int64)
    out[reachable] = np.rint(dist[reachable]).astype(np.int64)
    out.flags.writeable = False
    return DistanceMatrix(out, bool(reachable.all()))


def _require_connected(g: WeightedGraph, d: DistanceMatrix | None = None) -> DistanceMatrix:
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    return d


def is_minimal(g: WeightedGraph, d: DistanceMatrix | None = None) -> bool:
    """True iff every edge is a shortest path between its endpoints."""
    if d is None:
        d = apsp(g)
    eu, ev, ew = g.arrays
    return bool(np.all(d.matrix[eu, ev] == ew))


def non_minimal_edges(g: WeightedGraph, d: DistanceMatrix | None = None) -> list[int]:
    if d is None:
        d = apsp(g)
    eu, ev, ew = g.arrays
    return [int(i) for i in np.flatnonzero(d.matrix[eu, ev] < ew)]


def minimalize(g: WeightedGraph, d: DistanceMatrix | None = None) -> WeightedGraph:
    """Drop every edge strictly longer than its endpoints' distance.

    Labels and the relative order of surviving edges are preserved, and so is
    the path metric.
    """
    d = _require_connected(g, d)
    drop = non_minimal_edges(g, d)
    if not drop:
        return g
    return g.without_edges(drop)


# ---------------------------------------------------------------------------
# Cartesian products
# ---------------------------------------------------------------------------


def _strides(sizes):
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    return strides


def product_vertex(factors: Sequence[WeightedGraph], coords: Sequence[int]) -> int:
    """Id in ``cartesian_product(factors)`` of the vertex with these coordinates."""
    strides = _strides([f.n for f in factors])
    return sum(c * s for c, s in zip(coords, strides))


def product_coordinates(factors: Sequence[WeightedGraph], vertex: int) -> tuple[int, ...]:
    coords = []
    for size in reversed([f.n for f in factors]):
        vertex, c = divmod(vertex, size)
        coords.append(c)
    return tuple(reversed(coords))


def cartesian_product(gs: Sequence[WeightedGraph]) -> WeightedGraph:
    """Weighted Cartesian product.

    Vertex ids enumerate coordinate tuples in lexicographic order (first factor
    most significant) and are labeled by the tuple of factor labels. Every
    product edge copies the weight of its parent edge.
    """
    gs = list(gs)
    if not gs:
        raise InvalidGraphError("cartesian product of an empty factor list")
    if any(f.n == 0 for f in gs):
        raise InvalidGraphError("cartesian product with an empty factor")
    sizes = [f.n for f in gs]
    strides = _strides(sizes)
    labels = list(itertools.product(*(f.labels for f in gs)))
    edges = []
    for vid, coords in enumerate(itertools.product(*(range(s) for s in sizes))):
        for ell, (f, c) in enumerate(zip(gs, coords)):
            for b, eid in f.neighbors(c).items():
                if b > c:
                    edges.append((vid, vid + (b - c) * strides[ell], f.edges[eid][2]))
    return WeightedGraph(labels, edges)


def parent_edge(product: WeightedGraph, factors: Sequence[WeightedGraph], e: int) -> tuple[int, int]:
    """Return ``(factor index, factor edge id)`` of product edge ``e``."""
    if product.n != int(np.prod([f.n for f in factors], dtype=object)):
        raise InvalidGraphError("product size does not match the factors")
    u, v, _ = product.edges[e]
    cu = product_coordinates(factors, u)
    cv = product_coordinates(factors, v)
    diff = [i for i, (a, b) in enumerate(zip(cu, cv)) if a != b]
    if len(diff) != 1:
        raise MalformedProductEdgeError(
            f"edge {e} changes {len(diff)} coordinates, expected exactly one"
        )
    ell = diff[0]
    try:
        return ell, factors[ell].edge_id(cu[ell], cv[ell])
    except KeyError:
        raise MalformedProductEdgeError(
            f"edge {e} has no parent edge in factor {ell}"
        ) from None


class ProductDistances:
    """Distance lookups in a Cartesian product without building its matrix.

    Uses the additive decomposition of the product metric over the factors;
    supports the ``np.ix_`` style indexing that ``DistanceMatrix`` does.
    """

    def __init__(self, factors: Sequence[WeightedGraph], factor_distances=None):
        self.factors = list(factors)
        if factor_distances is None:
            factor_distances = [apsp(f) for f in self.factors]
        self._dist = [fd.matrix for fd in factor_distances]
        self._strides = _strides([f.n for f in self.factors])
        self._sizes = [f.n for f in self.factors]

    def _coords(self, ids, i):
        return (np.asarray(ids) // self._strides[i]) % self._sizes[i]

    def __getitem__(self, index):
        rows, cols = index
        total = 0
        for i, dm in enumerate(self._dist):
            total = total + dm[self._coords(rows, i), self._coords(cols, i)]
        return total


# ---------------------------------------------------------------------------
# Verification oracles
# ---------------------------------------------------------------------------


def _refined_colors(g: WeightedGraph, h: WeightedGraph):
    """Color refinement run jointly on both graphs so colors are comparable."""
    graphs = (g, h)
    colors = []
    table: dict = {}
    for G in graphs:
        cols = []
        for u in range(G.n):
            sig = (G.degree(u), tuple(sorted(G.edges[e][2] for e in G.neighbors(u).values())))
            cols.append(table.setdefault(sig, len(table)))
        colors.append(cols)
    n_classes = len(table)
    for _ in range(g.n):
        table = {}
        new = []
        for G, cols in zip(graphs, colors):
            nc = []
            for u in range(G.n):
                sig = (
                    cols[u],
                    tuple(sorted((G.edges[e][2], cols[v]) for v, e in G.neighbors(u).items())),
                )
                nc.append(table.setdefault(sig, len(table)))
            new.append(nc)
        colors = new
        if len(table) == n_classes:
            break
        n_classes = len(table)
    return colors


def graphs_isomorphic(g: WeightedGraph, h: WeightedGraph) -> list[int] | None:
    """Find a weight-preserving isomorphism ``g -> h``.

    Returns the image of every vertex of ``g`` as a list, or ``None``. This
    is a backtracking search pruned by color refinement; it is meant for
    verification on small graphs, not for the main algorithms.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(e[2] for e in g.edges) != sorted(e[2] for e in h.edges):
        return None
    if g.n == 0:
        return []
    cg, ch = _refined_colors(g, h)
    if sorted(cg) != sorted(ch):
        return None
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(ch):
        by_color.setdefault(c, []).append(v)
    class_size = {c: len(vs) for c, vs in by_color.items()}

    # Search order: BFS per component, each component started at its rarest color.
    order, parent = [], {}
    placed = [False] * g.n
    while len(order) < g.n:
        start = min((u for u in range(g.n) if not placed[u]), key=lambda u: (class_size[cg[u]], u))
        placed[start] = True
        parent[start] = None
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in g.neighbors(u):
                if not placed[v]:
                    placed[v] = True
                    parent[v] = u
                    queue.append(v)

    fwd = [-1] * g.n
    inv = [-1] * h.n

    def candidates(u):
        p = parent[u]
        if p is None:
            return by_color[cg[u]]
        w = g.weight(u, p)
        hp = fwd[p]
        return [x for x, e in h.neighbors(hp).items() if ch[x] == cg[u] and h.edges[e][2] == w]

    def consistent(u, x):
        mapped = 0
        for v, e in g.neighbors(u).items():
            fv = fwd[v]
            if fv < 0:
                continue
            mapped += 1
            eid = h.neighbors(x).get(fv)
            if eid is None or h.edges[eid][2] != g.edges[e][2]:
                return False
        return mapped == sum(1 for y in h.neighbors(x) if inv[y] >= 0)

    def extend(i):
        if i == len(order):
            return True
        u = order[i]
        for x in candidates(u):
            if inv[x] >= 0 or not consistent(u, x):
                continue
            fwd[u], inv[x] = x, u
            if extend(i + 1):
                return True
            fwd[u], inv[x] = -1, -1
        return False

    return list(fwd) if extend(0) else None


def is_isometric_subgraph(
    g: WeightedGraph,
    host: WeightedGraph,
    mapping: Sequence[int],
    host_distances=None,
    g_distances: DistanceMatrix | None = None,
) -> bool:
    """Check that ``mapping`` embeds ``g`` into ``host`` as an isometric subgraph.

    ``mapping[u]`` is the host vertex of ``u``. The map must be injective, send
    every edge to a host edge of equal weight, and preserve all distances.
    ``host_distances`` may be any object indexable like a ``DistanceMatrix``;
    by default the host's APSP is computed.
    """
    img = [int(x) for x in mapping]
    if len(img) != g.n:
        raise InvalidGraphError(f"map has {len(img)} entries for {g.n} vertices")
    for x in img:
        if not 0 <= x < host.n:
            raise InvalidGraphError(f"mapped vertex {x} out of range 0..{host.n - 1}")
    if len(set(img)) != len(img):
        return False
    for u, v, w in g.edges:
        eid = host.neighbors(img[u]).get(img[v])
        if eid is None or host.edges[eid][2] != w:
            return False
    dg = g_distances if g_distances is not None else apsp(g)
    dh = host_distances if host_distances is not None else apsp(host)
    idx = np.asarray(img, dtype=np.int64)
    sub = np.asarray(dh[np.ix_(idx, idx)])
    return bool(np.array_equal(dg.matrix, sub))
