"""Hamming and hypercube embeddings at desk scale.

A hypercube embedding of a connected graph is determined, up to equivalence
(permuting coordinates and flipping bits), by the multiset of vertex cuts its
coordinates induce. The brute-force search below builds that multiset one
vertex at a time: coordinates that agree on every vertex placed so far are
interchangeable, so placing a vertex only chooses *how many* coordinates of
each such group flip. Every multiset is therefore produced exactly once, which
makes counting non-equivalent embeddings a plain enumeration.

The search is exponential and meant for graphs with a handful of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceededError, DisconnectedGraphError, GraphTooLargeError, InvalidEmbeddingError
from .graph import DistanceMatrix, WeightedGraph, apsp, bfs_order, minimalize
from .decompose import Decomposition, pseudofactorize

DEFAULT_BUDGET = 2_000_000
COUNT_MAX_N = 8


@dataclass(frozen=True)
class HammingEmbedding:
    """One string over ``0..alphabet-1`` per vertex, all of the same length."""

    strings: tuple[tuple[int, ...], ...]
    alphabet: int = 2

    @property
    def dimension(self) -> int:
        return len(self.strings[0]) if self.strings else 0

    def as_text(self) -> list[str]:
        if self.alphabet > 10:
            return [",".join(map(str, s)) for s in self.strings]
        return ["".join(map(str, s)) for s in self.strings]

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.strings)) if self.strings and self.dimension else []

    def hamming(self, u: int, v: int) -> int:
        return sum(a != b for a, b in zip(self.strings[u], self.strings[v]))

    def is_valid(self, g: WeightedGraph, d: DistanceMatrix | None = None) -> bool:
        """Isometric, and every coordinate changes across some edge."""
        if len(self.strings) != g.n:
            return False
        if any(len(s) != self.dimension for s in self.strings):
            return False
        if any(not 0 <= x < self.alphabet for s in self.strings for x in s):
            return False
        if d is None:
            d = apsp(g)
        arr = np.array(self.strings, dtype=np.int64).reshape(g.n, self.dimension)
        ham = (arr[:, None, :] != arr[None, :, :]).sum(axis=2)
        if not np.array_equal(ham, d.matrix):
            return False
        changed = np.zeros(self.dimension, dtype=bool)
        for u, v, _ in g.edges:
            changed |= arr[u] != arr[v]
        return bool(changed.all())


@dataclass(frozen=True)
class CanonicalPartition:
    """Coordinates grouped by transitive co-change across edges."""

    groups: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.groups)


def _canonical_column(col):
    relabel: dict = {}
    return tuple(relabel.setdefault(x, len(relabel)) for x in col)


def canonical_form(e: HammingEmbedding) -> tuple:
    """Complete invariant under coordinate permutation and per-coordinate relabeling."""
    return (len(e.strings), tuple(sorted(_canonical_column(c) for c in e.columns())))


def embeddings_equivalent(e1: HammingEmbedding, e2: HammingEmbedding) -> bool:
    if len(e1.strings) != len(e2.strings) or e1.dimension != e2.dimension:
        return False
    return canonical_form(e1) == canonical_form(e2)


def canonical_partition(g: WeightedGraph, e: HammingEmbedding) -> CanonicalPartition:
    t = e.dimension
    parent = list(range(t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        changed = [j for j in range(t) if e.strings[u][j] != e.strings[v][j]]
        for j in changed[1:]:
            parent[find(j)] = find(changed[0])
    groups: dict[int, list[int]] = {}
    for j in range(t):
        groups.setdefault(find(j), []).append(j)
    return CanonicalPartition(tuple(sorted(tuple(gr) for gr in groups.values())))


# ---------------------------------------------------------------------------
# Brute-force search
# ---------------------------------------------------------------------------


def parity_ok(d: DistanceMatrix) -> bool:
    """Hamming distances have even perimeter on every triangle of points."""
    D = d.matrix
    s = D[:, :, None] + D[None, :, :] + D[:, None, :]
    return bool(np.all(s % 2 == 0))


class _Search:
    def __init__(self, D: np.ndarray, order: list[int], pool: int, budget: int):
        self.D = [[int(D[a, b]) for b in order] for a in order]
        self.n = len(order)
        self.pool = pool
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"embedding search exceeded {self.budget} steps")

    def solutions(self, bound=None) -> Iterator[list[tuple[int, int]]]:
        """Yield final groups ``[(pattern, size), ...]``.

        ``bound`` is an optional callable returning the current best number of
        non-constant coordinates; branches that cannot beat it are cut.
        """
        yield from self._place(1, [(0, self.pool)], bound)

    def _place(self, i, groups, bound):
        if i == self.n:
            yield groups
            return
        target = self.D[i][:i]
        rem = [0] * (len(groups) + 1)
        for idx in range(len(groups) - 1, -1, -1):
            rem[idx] = rem[idx + 1] + groups[idx][1]
        sums = [0] * i
        chosen = [0] * len(groups)
        bit = 1 << i

        def assign(idx):
            self._tick()
            if idx == len(groups):
                if sums == target:
                    yield list(chosen)
                return
            pattern, size = groups[idx]
            tail = rem[idx + 1]
            for k in range(size + 1):
                ok = True
                for j in range(i):
                    c = size - k if pattern >> j & 1 else k
                    s = sums[j] + c
                    if s > target[j] or s + tail < target[j]:
                        ok = False
                        break
                if not ok:
                    continue
                for j in range(i):
                    sums[j] += size - k if pattern >> j & 1 else k
                chosen[idx] = k
                yield from assign(idx + 1)
                for j in range(i):
                    sums[j] -= size - k if pattern >> j & 1 else k

        for counts in assign(0):
            new = []
            for (pattern, size), k in zip(groups, counts):
                if k:
                    new.append((pattern | bit, k))
                if size - k:
                    new.append((pattern, size - k))
            if bound is not None:
                used = sum(s for p, s in new if p)
                if used >= bound():
                    continue
            yield from self._place(i + 1, new, bound)


def _prepare(g: WeightedGraph, d: DistanceMatrix | None):
    if d is None:
        d = apsp(g)
    if not d.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    return d


def _to_embedding(groups, order, n) -> HammingEmbedding:
    columns = []
    for pattern, size in groups:
        if pattern:
            col = [0] * n
            for pos, v in enumerate(order):
                col[v] = pattern >> pos & 1
            columns.extend([tuple(col)] * size)
    columns.sort(reverse=True)
    strings = tuple(tuple(c[v] for c in columns) for v in range(n))
    return HammingEmbedding(strings, 2)


def default_max_dim(g: WeightedGraph) -> int:
    return g.total_weight()


def hypercube_embed_bruteforce(
    g: WeightedGraph,
    d: DistanceMatrix | None = None,
    max_dim: int | None = None,
    *,
    minimum: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> HammingEmbedding | None:
    """Binary embedding of ``g`` with at most ``max_dim`` coordinates, or None.

    Vertex 0 is pinned to the all-zero string and the remaining vertices are
    placed in BFS order. With ``minimum`` (the default) the result has the
    fewest coordinates possible; otherwise the first embedding found is
    returned.
    """
    d = _prepare(g, d)
    if max_dim is None:
        max_dim = default_max_dim(g)
    if g.n == 1:
        return HammingEmbedding(((),), 2)
    if not parity_ok(d):
        return None
    order = bfs_order(g, 0)
    search = _Search(d.matrix, order, max_dim, budget)
    best = None
    best_used = [max_dim + 1]
    for groups in search.solutions(bound=(lambda: best_used[0]) if minimum else None):
        used = sum(s for p, s in groups if p)
        if best is None or used < best_used[0]:
            best, best_used[0] = groups, used
        if not minimum:
            break
    return None if best is None else _to_embedding(best, order, g.n)


def is_hypercube_embeddable(g: WeightedGraph, d: DistanceMatrix | None = None, max_dim=None, *, budget=DEFAULT_BUDGET) -> bool:
    return hypercube_embed_bruteforce(g, d, max_dim, minimum=False, budget=budget) is not None


def enumerate_hypercube_embeddings(
    g: WeightedGraph, d: DistanceMatrix | None = None, max_dim: int | None = None, *, budget: int = DEFAULT_BUDGET
) -> list[HammingEmbedding]:
    """All pairwise non-equivalent hypercube embeddings within ``max_dim`` coordinates."""
    d = _prepare(g, d)
    if max_dim is None:
        max_dim = default_max_dim(g)
    if g.n == 1:
        return [HammingEmbedding(((),), 2)]
    if not parity_ok(d):
        return []
    order = bfs_order(g, 0)
    found: dict = {}
    for groups in _Search(d.matrix, order, max_dim, budget).solutions():
        e = _to_embedding(groups, order, g.n)
        found.setdefault(canonical_form(e), e)
    return list(found.values())


def factor_embedding_counts(
    g: WeightedGraph, max_dim: int | None = None, *, budget: int = DEFAULT_BUDGET, max_n: int = COUNT_MAX_N
) -> tuple[Decomposition, list[int]]:
    """Pseudofactorize ``g`` and count hypercube embeddings of each factor."""
    if g.n > max_n:
        raise GraphTooLargeError(f"graph has {g.n} vertices; counting is limited to {max_n} (raise max_n to override)")
    dec = pseudofactorize(minimalize(g))
    counts = []
    for f in dec.factors:
        fd = apsp(f)
        cap = max_dim if max_dim is not None else default_max_dim(f)
        counts.append(len(enumerate_hypercube_embeddings(f, fd, cap, budget=budget)))
    return dec, counts


def count_hypercube_embeddings(
    g: WeightedGraph, max_dim: int | None = None, *, budget: int = DEFAULT_BUDGET, max_n: int = COUNT_MAX_N
) -> int:
    """Number of non-equivalent hypercube embeddings, as a product over pseudofactors."""
    _, counts = factor_embedding_counts(g, max_dim, budget=budget, max_n=max_n)
    total = 1
    for c in counts:
        total *= c
    return total


def compose_from_pseudofactors(
    g: WeightedGraph, dec: Decomposition, factor_embeddings: Sequence[HammingEmbedding]
) -> HammingEmbedding:
    """Concatenate factor embeddings along the pseudofactorization map."""
    if len(factor_embeddings) != len(dec.factors):
        raise InvalidEmbeddingError(
            f"{len(factor_embeddings)} embeddings for {len(dec.factors)} factors"
        )
    for i, (f, e) in enumerate(zip(dec.factors, factor_embeddings)):
        if not e.is_valid(f):
            raise InvalidEmbeddingError(f"embedding {i} is not a valid embedding of its factor")
    strings = tuple(
        tuple(x for i, e in enumerate(factor_embeddings) for x in e.strings[dec.map[u][i]])
        for u in range(g.n)
    )
    out = HammingEmbedding(strings, max(e.alphabet for e in factor_embeddings))
    if not out.is_valid(g):
        raise InvalidEmbeddingError("composed strings do not embed the graph")
    return out
