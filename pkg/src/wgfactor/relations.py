"""Edge relations on weighted graphs and their equivalence classes.

Two edges ``uv`` and ``ab`` are *theta*-related when their theta-difference
``[d(u,a) - d(u,b)] - [d(v,a) - d(v,b)]`` is nonzero. *Tau* relates two edges
sharing an endpoint that do not span a qualifying square. A relation is
materialized as an `EdgeRelationGraph` whose nodes are edge ids; connected
components of that graph are the classes of the relation's transitive closure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGraphError, NotSpanningTreeError, SharedEndpointError
from .graph import DistanceMatrix, WeightedGraph

THETA = "theta"
TAU = "tau"
THETA_T = "theta_T"

KINDS = ("theta", "theta_union_tau", "theta_t")

# Cap on the number of entries in one block of theta-differences.
_BLOCK_ENTRIES = 1 << 22


def _ends(e):
    return int(e[0]), int(e[1])


def theta_difference(d: DistanceMatrix, e, f) -> int:
    """Signed theta-difference of edges ``e=(u, v)`` and ``f=(a, b)``.

    Extra tuple entries such as a weight are ignored. The sign follows the
    endpoint orientation; whether it is zero does not.
    """
    u, v = _ends(e)
    a, b = _ends(f)
    D = d.matrix
    return int((D[u, a] - D[u, b]) - (D[v, a] - D[v, b]))


def theta_related(d: DistanceMatrix, e, f) -> bool:
    return theta_difference(d, e, f) != 0


def theta_block(g: WeightedGraph, d: DistanceMatrix, rows) -> np.ndarray:
    """Theta-differences of the edges ``rows`` against every edge, shape (len(rows), m)."""
    eu, ev, _ = g.arrays
    rows = np.asarray(rows, dtype=np.int64)
    Du = d.matrix[eu[rows]]
    Dv = d.matrix[ev[rows]]
    return (Du[:, eu] - Du[:, ev]) - (Dv[:, eu] - Dv[:, ev])


def _theta_pairs(g, d, rows):
    """Yield ``(row_edge, other_edge)`` for every theta pair with distinct edges."""
    rows = np.asarray(rows, dtype=np.int64)
    if g.m == 0 or rows.size == 0:
        return
    step = max(1, _BLOCK_ENTRIES // g.m)
    for start in range(0, rows.size, step):
        chunk = rows[start:start + step]
        r, f = np.nonzero(theta_block(g, d, chunk))
        e = chunk[r]
        keep = e != f
        yield from zip(e[keep].tolist(), f[keep].tolist())


def _edge_id(g: WeightedGraph, e) -> int:
    if isinstance(e, (int, np.integer)):
        if not 0 <= e < g.m:
            raise InvalidGraphError(f"edge id {e} out of range")
        return int(e)
    u, v = _ends(e)
    return g.edge_id(u, v)


def _shared_endpoint(g, e, f):
    u1, v1, _ = g.edges[e]
    u2, v2, _ = g.edges[f]
    common = {u1, v1} & {u2, v2}
    return common.pop() if len(common) == 1 else None


def _square_witness(g: WeightedGraph, d: DistanceMatrix, e: int, f: int):
    u = _shared_endpoint(g, e, f)
    if u is None:
        raise SharedEndpointError(f"edges {e} and {f} do not share exactly one endpoint")
    a, b, w_e = g.edges[e]
    v = b if a == u else a
    a, b, w_f = g.edges[f]
    vp = b if a == u else a
    nv, nvp = g.neighbors(v), g.neighbors(vp)
    small, large = (nv, nvp) if len(nv) <= len(nvp) else (nvp, nv)
    for x in sorted(small):
        if x == u or x not in large:
            continue
        # square u-v-x-v': uv opposite xv', uv' opposite xv
        if g.weight(x, vp) != w_e or g.weight(x, v) != w_f:
            continue
        if theta_related(d, (u, v), (x, vp)) and theta_related(d, (u, vp), (x, v)):
            return x
    return None


def satisfies_square_property(g: WeightedGraph, d: DistanceMatrix, e, f) -> bool:
    """Whether edges ``uv`` and ``uv'`` close a square with equal, theta-related opposite sides."""
    return _square_witness(g, d, _edge_id(g, e), _edge_id(g, f)) is not None


def tau_related(g: WeightedGraph, d: DistanceMatrix, e, f) -> bool:
    e, f = _edge_id(g, e), _edge_id(g, f)
    if e == f or _shared_endpoint(g, e, f) is None:
        return False
    return _square_witness(g, d, e, f) is None


def check_spanning_tree(g: WeightedGraph, tree: Iterable[int]) -> frozenset[int]:
    tree = frozenset(int(t) for t in tree)
    if len(tree) != g.n - 1 or any(not 0 <= t < g.m for t in tree):
        raise NotSpanningTreeError(f"{len(tree)} edges cannot span {g.n} vertices")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in tree:
        u, v, _ = g.edges[t]
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotSpanningTreeError(f"tree edge {t} closes a cycle")
        parent[ru] = rv
    return tree


def theta_t_related(g: WeightedGraph, d: DistanceMatrix, tree, e, f) -> bool:
    tree = check_spanning_tree(g, tree)
    e, f = _edge_id(g, e), _edge_id(g, f)
    return (e in tree or f in tree) and theta_related(d, g.edges[e], g.edges[f])


# ---------------------------------------------------------------------------
# Relation graphs
# ---------------------------------------------------------------------------


class EdgeRelationGraph:
    """Unweighted graph on the edge ids of a base graph.

    Each adjacency keeps the tag of the relation that produced it first; tags
    are informational and never change the components.
    """

    def __init__(self, n_edges: int):
        self.adj: list[set[int]] = [set() for _ in range(n_edges)]
        self.tags: dict[tuple[int, int], str] = {}

    def __len__(self):
        return len(self.adj)

    def add(self, e: int, f: int, tag: str) -> None:
        if e == f:
            return
        key = (e, f) if e < f else (f, e)
        if key not in self.tags:
            self.tags[key] = tag
            self.adj[e].add(f)
            self.adj[f].add(e)

    def discard(self, e: int, f: int) -> None:
        key = (e, f) if e < f else (f, e)
        if self.tags.pop(key, None) is not None:
            self.adj[e].discard(f)
            self.adj[f].discard(e)

    def tag(self, e: int, f: int) -> str | None:
        return self.tags.get((e, f) if e < f else (f, e))

    def pairs(self, tag: str | None = None) -> set[tuple[int, int]]:
        return {k for k, t in self.tags.items() if tag is None or t == tag}


def _add_theta(rg, g, d, rows, tag):
    for e, f in _theta_pairs(g, d, rows):
        rg.add(e, f, tag)


def _add_tau(rg: EdgeRelationGraph, g: WeightedGraph):
    """Add tau adjacencies given an ``rg`` that already holds every theta pair.

    First collect the adjacent pairs that do satisfy the square property by
    scanning theta-related equal-weight edge pairs as opposite square sides;
    every other adjacent pair is tau-related.
    """
    not_tau = set()
    for e, f in list(rg.tags):
        a, b, w = g.edges[e]
        c, dd, wf = g.edges[f]
        if w != wf or len({a, b, c, dd}) < 4:
            continue
        for (p, q), (r, s) in (((a, c), (b, dd)), ((a, dd), (b, c))):
            x = g.neighbors(p).get(q)
            y = g.neighbors(r).get(s)
            if x is None or y is None or g.edges[x][2] != g.edges[y][2]:
                continue
            if y not in rg.adj[x]:
                continue
            for s1 in (e, f):
                for s2 in (x, y):
                    not_tau.add((s1, s2) if s1 < s2 else (s2, s1))
    for u in range(g.n):
        inc = sorted(g.neighbors(u).values())
        for i, e in enumerate(inc):
            for f in inc[i + 1:]:
                if (e, f) not in not_tau:
                    rg.add(e, f, TAU)


def build_relation_graph(
    g: WeightedGraph, d: DistanceMatrix, kind: str = "theta", tree=None
) -> EdgeRelationGraph:
    """Materialize a relation on the edges of ``g``.

    ``kind`` is ``"theta"`` (all pairs), ``"theta_union_tau"`` or ``"theta_t"``
    (theta restricted to pairs with an edge in the spanning ``tree``).
    """
    rg = EdgeRelationGraph(g.m)
    if kind == "theta":
        _add_theta(rg, g, d, np.arange(g.m), THETA)
    elif kind == "theta_union_tau":
        _add_theta(rg, g, d, np.arange(g.m), THETA)
        _add_tau(rg, g)
    elif kind == "theta_t":
        if tree is None:
            raise ValueError("kind='theta_t' needs a spanning tree")
        tree = check_spanning_tree(g, tree)
        _add_theta(rg, g, d, sorted(tree), THETA_T)
    else:
        raise ValueError(f"unknown relation kind {kind!r}; expected one of {KINDS}")
    return rg


@dataclass(frozen=True)
class EquivalenceClasses:
    """Partition of edge ids.

    ``label[e]`` is the class of edge ``e``; ``classes[k]`` lists the members of
    class ``k`` in increasing order, and classes are ordered by smallest member.
    """

    label: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.classes)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "EquivalenceClasses":
        """Canonicalize an arbitrary labeling of edges."""
        renum: dict = {}
        members: list[list[int]] = []
        out = []
        for e, lab in enumerate(labels):
            if lab not in renum:
                renum[lab] = len(members)
                members.append([])
            k = renum[lab]
            members[k].append(e)
            out.append(k)
        return cls(tuple(out), tuple(tuple(c) for c in members))

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.classes}


def equivalence_classes(rg: EdgeRelationGraph) -> EquivalenceClasses:
    """Connected components of a relation graph, canonically numbered."""
    m = len(rg)
    label = [-1] * m
    k = 0
    for s in range(m):
        if label[s] >= 0:
            continue
        label[s] = k
        queue = deque([s])
        while queue:
            e = queue.popleft()
            for f in rg.adj[e]:
                if label[f] < 0:
                    label[f] = k
                    queue.append(f)
        k += 1
    return EquivalenceClasses.from_labels(label)


def theta_classes(g: WeightedGraph, d: DistanceMatrix) -> EquivalenceClasses:
    return equivalence_classes(build_relation_graph(g, d, "theta"))


def factor_classes(g: WeightedGraph, d: DistanceMatrix) -> EquivalenceClasses:
    return equivalence_classes(build_relation_graph(g, d, "theta_union_tau"))


def class_path_sum(
    g: WeightedGraph, d: DistanceMatrix, classes: EquivalenceClasses, path: Sequence[int], k: int
) -> int:
    """Theta-sum of the class-``k`` edges along a walk from ``path[0]`` to ``path[-1]``."""
    path = [int(p) for p in path]
    u, v = path[0], path[-1]
    D = d.matrix
    total = 0
    for p, q in zip(path, path[1:]):
        eid = g.neighbors(p).get(q)
        if eid is None:
            raise InvalidGraphError(f"walk steps between non-adjacent vertices {p} and {q}")
        if classes.label[eid] == k:
            total += int((D[u, p] - D[u, q]) - (D[v, p] - D[v, q]))
    return total


def explain(g: WeightedGraph, rg: EdgeRelationGraph, classes: EquivalenceClasses) -> list[dict]:
    """Per-class members with a witness chain back to the class's first edge.

    Each witness ``{"edge": e, "via": f, "relation": tag}`` records that ``e``
    was reached from ``f`` through one relation adjacency.
    """
    out = []
    for k, members in enumerate(classes.classes):
        root = members[0]
        seen = {root}
        witness = []
        queue = deque([root])
        while queue:
            e = queue.popleft()
            for f in sorted(rg.adj[e]):
                if f not in seen:
                    seen.add(f)
                    witness.append({"edge": f, "via": e, "relation": rg.tag(e, f)})
                    queue.append(f)
        out.append({
            "class": k,
            "edges": [
                {"id": e, "u": g.labels[g.edges[e][0]], "v": g.labels[g.edges[e][1]], "w": g.edges[e][2]}
                for e in members
            ],
            "witness": witness,
        })
    return out
