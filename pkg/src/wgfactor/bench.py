"""Timing harness for the two pseudofactorization routes.

Both routes share the all-pairs shortest paths, so that phase is timed once per
instance and reported on its own. The headline comparison is the ``relation``
phase: building theta over all edge pairs (``gw``) versus growing the spanning
tree (``feder-tree``).
"""

from __future__ import annotations

import csv
import gc
import io
import random
import time

import numpy as np

from .corpus import grid_graph, random_minimal, random_tree
from .decompose import decompose_over
from .graph import WeightedGraph, apsp, cartesian_product
from .relations import theta_classes
from .treefast import find_theta_tree

FAMILIES = ("grid", "random-minimal", "tree-product")
ALGORITHMS = ("gw", "feder-tree")
CSV_FIELDS = ("n", "m", "algo", "phase", "millis")


def family_graph(family: str, size: int, rng: random.Random) -> WeightedGraph:
    """One instance of ``family`` at ``size``.

    grid: ``size x size`` product of two weighted paths.
    random-minimal: ``size`` vertices, expected degree about 4, minimalized.
    tree-product: product of two random weighted trees on ``size`` vertices.
    """
    if size < 1:
        raise ValueError("size must be positive")
    if family == "grid":
        return grid_graph(size, size, rng)
    if family == "random-minimal":
        p = min(1.0, 4.0 / max(size - 1, 1))
        return random_minimal(rng, size, p)
    if family == "tree-product":
        return cartesian_product([random_tree(rng, size), random_tree(rng, size)])
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _timed(fn, *args, **kwargs):
    gc.collect()
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - t) * 1000.0


def relation_classes(g, d, algorithm):
    if algorithm == "gw":
        return theta_classes(g, d)
    if algorithm == "feder-tree":
        return find_theta_tree(g, d)[1]
    raise ValueError(f"unknown algorithm {algorithm!r}")


def time_instance(g: WeightedGraph, algorithms=ALGORITHMS, repeats: int = 1):
    """Phase timings in milliseconds (best of ``repeats``) for each algorithm.

    Returns ``(timings, classes)`` where ``timings[algo][phase]`` is a float
    and ``classes[algo]`` the partition the route produced.
    """
    d, t_apsp = _timed(apsp, g)
    timings, classes = {}, {}
    for algo in algorithms:
        best = {"apsp": t_apsp}
        for _ in range(max(repeats, 1)):
            cls, t_rel = _timed(relation_classes, g, d, algo)
            _, t_quo = _timed(decompose_over, g, d, cls)
            best["relation"] = min(best.get("relation", t_rel), t_rel)
            best["quotients"] = min(best.get("quotients", t_quo), t_quo)
        timings[algo] = best
        classes[algo] = cls
    return timings, classes


def run_bench(family, sizes, algorithms=ALGORITHMS, seed: int = 0, repeats: int = 1):
    """Rows ``{n, m, algo, phase, millis}`` over the given sizes.

    Raises AssertionError if two routes disagree on an instance.
    """
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        g = family_graph(family, size, rng)
        timings, classes = time_instance(g, algorithms, repeats)
        parts = {algo: c.as_sets() for algo, c in classes.items()}
        if len({frozenset(p) for p in parts.values()}) > 1:
            raise AssertionError(f"routes disagree on {family} size {size}")
        for algo in algorithms:
            for phase, ms in timings[algo].items():
                rows.append({"n": g.n, "m": g.m, "algo": algo, "phase": phase, "millis": round(ms, 3)})
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.maximum(np.asarray(ys, dtype=float), 1e-9)
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def slopes(rows, phase: str = "relation", x: str = "n") -> dict[str, float]:
    out = {}
    for algo in sorted({r["algo"] for r in rows}):
        sel = [r for r in rows if r["algo"] == algo and r["phase"] == phase]
        if len(sel) >= 2:
            out[algo] = loglog_slope([r[x] for r in sel], [r["millis"] for r in sel])
    return out
