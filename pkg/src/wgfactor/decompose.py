"""Breaking a graph up over an edge equivalence relation.

For each class of the relation, delete the class's edges, contract each
remaining component to a vertex, and keep one weighted edge per pair of
components joined by a deleted edge. Over the closure of theta on a minimal
graph this yields the canonical (irreducible) pseudofactorization; over the
closure of theta-or-tau on any connected graph it yields the prime
factorization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DisconnectedGraphError,
    InvalidGraphError,
    NonMinimalGraphError,
    VerificationError,
    WeightMismatchError,
)
from .graph import (
    DistanceMatrix,
    ProductDistances,
    WeightedGraph,
    apsp,
    cartesian_product,
    is_isometric_subgraph,
    non_minimal_edges,
    product_vertex,
)
from .relations import EquivalenceClasses, factor_classes, theta_classes

PSEUDOFACTORIZATION = "pseudofactorization"
FACTORIZATION = "factorization"

# Internal verification runs by default up to this many vertices.
VERIFY_MAX_N = 64


@dataclass(frozen=True)
class QuotientPiece:
    """Quotient of ``g`` by the components left after deleting one class."""

    class_id: int
    component: tuple[int, ...]
    quotient: WeightedGraph


@dataclass(frozen=True)
class Decomposition:
    """Factors plus the vertex map into their Cartesian product.

    ``map[u][i]`` is the vertex of ``factors[i]`` that vertex ``u`` lands on.
    """

    mode: str
    factors: tuple[WeightedGraph, ...]
    map: tuple[tuple[int, ...], ...]
    scale: int | Fraction = 1
    classes: EquivalenceClasses | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.factors)

    def product_map(self) -> list[int]:
        """Image of every vertex as a vertex id of ``cartesian_product(factors)``."""
        return [product_vertex(self.factors, coords) for coords in self.map]


def _components_without(g: WeightedGraph, removed: set[int]) -> tuple[int, ...]:
    # Components are numbered by their smallest vertex id.
    comp = [-1] * g.n
    c = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            u = stack.pop()
            for v, e in g.neighbors(u).items():
                if comp[v] < 0 and e not in removed:
                    comp[v] = c
                    stack.append(v)
        c += 1
    return tuple(comp)


def decompose_over(g: WeightedGraph, d: DistanceMatrix, classes: EquivalenceClasses) -> list[QuotientPiece]:
    """Build one quotient graph per class.

    Raises `WeightMismatchError` when two edges between the same pair of
    components disagree on weight, and `InvalidGraphError` when a class edge
    has both ends in one component (the relation does not separate it).
    """
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    if len(classes.label) != g.m:
        raise InvalidGraphError("classes do not partition the edges of g")
    pieces = []
    for k, members in enumerate(classes.classes):
        comp = _components_without(g, set(members))
        weights: dict[tuple[int, int], int] = {}
        for e in members:
            u, v, w = g.edges[e]
            a, b = sorted((comp[u], comp[v]))
            if a == b:
                raise InvalidGraphError(
                    f"class {k} edge {e} does not separate its endpoints"
                )
            if weights.setdefault((a, b), w) != w:
                raise WeightMismatchError(k, (a, b), (weights[(a, b)], w))
        quotient = WeightedGraph(max(comp) + 1, [(a, b, w) for (a, b), w in weights.items()])
        pieces.append(QuotientPiece(k, comp, quotient))
    return pieces


def _assemble(g, pieces, mode, scale, classes):
    if g.n == 1:
        return Decomposition(mode, (WeightedGraph(1),), ((0,),), scale, classes)
    factors = tuple(p.quotient for p in pieces)
    vmap = tuple(tuple(p.component[u] for p in pieces) for u in range(g.n))
    return Decomposition(mode, factors, vmap, scale, classes)


def _maybe_verify(g, dec, verify, d):
    if verify is None:
        verify = g.n <= VERIFY_MAX_N
    if verify and not verify_decomposition(g, dec, d):
        raise VerificationError(f"{dec.mode} failed its own verification")


def _check_minimal(g, d):
    bad = non_minimal_edges(g, d)
    if bad:
        u, v, w = g.edges[bad[0]]
        raise NonMinimalGraphError(
            f"graph is not minimal: edge {g.labels[u]!r}-{g.labels[v]!r} has weight {w} "
            f"but its endpoints are at distance {int(d[u, v])}; minimalize it first",
            bad,
        )


def pseudofactorize(
    g: WeightedGraph,
    d: DistanceMatrix | None = None,
    *,
    algorithm: str = "gw",
    verify: bool | None = None,
    scale=1,
    check_invariant: bool = False,
) -> Decomposition:
    """Canonical pseudofactorization of a connected minimal graph.

    ``algorithm`` picks how the theta closure classes are found: ``"gw"``
    tests every pair of edges, ``"feder-tree"`` grows a spanning tree whose
    restricted relation has the same classes. ``check_invariant`` makes the
    tree route compare its partial classes against the full ones as it runs.
    """
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    _check_minimal(g, d)
    if algorithm == "gw":
        classes = theta_classes(g, d)
    elif algorithm == "feder-tree":
        from .treefast import find_theta_tree

        _, classes = find_theta_tree(g, d, check_invariant=check_invariant)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    dec = _assemble(g, decompose_over(g, d, classes), PSEUDOFACTORIZATION, scale, classes)
    _maybe_verify(g, dec, verify, d)
    return dec


def factorize(
    g: WeightedGraph, d: DistanceMatrix | None = None, *, verify: bool | None = None, scale=1
) -> Decomposition:
    """Prime factorization of a connected weighted graph (minimality not needed)."""
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    classes = factor_classes(g, d)
    dec = _assemble(g, decompose_over(g, d, classes), FACTORIZATION, scale, classes)
    _maybe_verify(g, dec, verify, d)
    return dec


def is_irreducible(g: WeightedGraph, d: DistanceMatrix | None = None) -> bool:
    """True iff the theta closure has a single class (``K1`` counts as irreducible)."""
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    _check_minimal(g, d)
    return len(theta_classes(g, d)) <= 1


def is_prime(g: WeightedGraph, d: DistanceMatrix | None = None) -> bool:
    """True iff the theta-or-tau closure has a single class (``K1`` counts as prime)."""
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    return len(factor_classes(g, d)) <= 1


def verify_decomposition(g: WeightedGraph, dec: Decomposition, d: DistanceMatrix | None = None) -> bool:
    """Independent check of a decomposition against its input graph.

    Pseudofactorizations must embed ``g`` as an isometric subgraph of the
    product; factorizations must additionally be onto, with the product
    having no edges beyond the images of ``g``'s edges.
    """
    if len(dec.map) != g.n:
        return False
    k = len(dec.factors)
    for coords in dec.map:
        if len(coords) != k:
            return False
        for c, f in zip(coords, dec.factors):
            if not 0 <= c < f.n:
                return False
    product = cartesian_product(dec.factors)
    image = dec.product_map()
    host_d = ProductDistances(dec.factors)
    if not is_isometric_subgraph(g, product, image, host_distances=host_d, g_distances=d):
        return False
    if dec.mode == FACTORIZATION:
        # Injective and edge preserving, so equal counts make it an isomorphism.
        return product.n == g.n and product.m == g.m
    return dec.mode == PSEUDOFACTORIZATION


def parent_factors(g: WeightedGraph, dec: Decomposition) -> list[int]:
    """For every edge of ``g``, the factor holding its parent edge under ``dec.map``."""
    out = []
    for u, v, _ in g.edges:
        diff = [i for i, (a, b) in enumerate(zip(dec.map[u], dec.map[v])) if a != b]
        if len(diff) != 1:
            raise VerificationError(f"edge {u}-{v} changes {len(diff)} coordinates")
        out.append(diff[0])
    return out


def factor_multiset_isomorphic(fs, hs) -> bool:
    """Whether two factor lists agree up to order and isomorphism."""
    from .graph import graphs_isomorphic

    fs, hs = list(fs), list(hs)
    if len(fs) != len(hs):
        return False
    used = [False] * len(hs)
    for f in fs:
        for j, h in enumerate(hs):
            if not used[j] and graphs_isomorphic(f, h) is not None:
                used[j] = True
                break
        else:
            return False
    return True


def weight_profile(dec: Decomposition) -> list[tuple[int, int, tuple[int, ...]]]:
    """Cheap isomorphism invariant per factor: (n, m, sorted weights)."""
    return sorted((f.n, f.m, tuple(sorted(w for *_, w in f.edges))) for f in dec.factors)


__all__ = [
    "Decomposition",
    "QuotientPiece",
    "decompose_over",
    "factorize",
    "factor_multiset_isomorphic",
    "is_irreducible",
    "is_prime",
    "parent_factors",
    "pseudofactorize",
    "verify_decomposition",
    "weight_profile",
    "PSEUDOFACTORIZATION",
    "FACTORIZATION",
]
