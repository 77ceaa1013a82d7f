"""JSON and DOT serialization.

Graph JSON::

    {"vertices": ["a", "b", ...], "edges": [{"u": "a", "v": "b", "w": 3}, ...]}

Weights may be integers, decimal or ``"p/q"`` strings, or floats (read through
their shortest decimal repr). Non-integer weights are scaled by the least
common multiple of their denominators and the factor is reported alongside
the graph. Output is canonical: keys sorted, vertices in input order.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .decompose import Decomposition
from .errors import DecompositionFormatError, InvalidGraphError
from .graph import WeightedGraph
from .relations import EquivalenceClasses

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _label_in(x, where):
    if isinstance(x, bool) or x is None:
        raise InvalidGraphError(f"{where}: vertex label must be a string or integer, got {x!r}")
    if isinstance(x, (str, int)):
        return x
    if isinstance(x, list):
        return tuple(_label_in(y, where) for y in x)
    raise InvalidGraphError(f"{where}: vertex label must be a string or integer, got {x!r}")


def _label_out(x):
    if isinstance(x, tuple):
        return [_label_out(y) for y in x]
    return x


def label_key(x) -> str:
    """String form of a label, used as a JSON object key."""
    return x if isinstance(x, str) else json.dumps(_label_out(x))


def parse_weight(w, where="weight") -> Fraction:
    if isinstance(w, bool):
        raise InvalidGraphError(f"{where}: weight must be a number, got {w!r}")
    try:
        if isinstance(w, int):
            q = Fraction(w)
        elif isinstance(w, float):
            if not math.isfinite(w):
                raise ValueError
            q = Fraction(repr(w))
        elif isinstance(w, str):
            q = Fraction(w.strip())
        else:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise InvalidGraphError(f"{where}: cannot read weight {w!r}") from None
    if q <= 0:
        raise InvalidGraphError(f"{where}: weight must be positive, got {w!r}")
    return q


def graph_from_dict(obj) -> tuple[WeightedGraph, int]:
    """Parse graph JSON data into ``(graph, scale)``."""
    if not isinstance(obj, dict):
        raise InvalidGraphError("graph JSON must be an object")
    for key in ("vertices", "edges"):
        if key not in obj:
            raise InvalidGraphError(f"graph JSON is missing {key!r}")
        if not isinstance(obj[key], list):
            raise InvalidGraphError(f"{key!r} must be a list")
    vertices = [_label_in(x, f"vertices[{i}]") for i, x in enumerate(obj["vertices"])]
    raw = []
    for i, e in enumerate(obj["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, dict):
            raise InvalidGraphError(f"{where}: edge must be an object with u, v, w")
        missing = [k for k in ("u", "v", "w") if k not in e]
        if missing:
            raise InvalidGraphError(f"{where}: missing field {missing[0]!r}")
        raw.append((
            _label_in(e["u"], f"{where}.u"),
            _label_in(e["v"], f"{where}.v"),
            parse_weight(e["w"], f"{where}.w"),
        ))
    scale = 1
    for _, _, q in raw:
        scale = math.lcm(scale, q.denominator)
    edges = [(u, v, int(q * scale)) for u, v, q in raw]
    return WeightedGraph.from_labeled_edges(edges, vertices), scale


def graph_to_dict(g: WeightedGraph) -> dict:
    return {
        "vertices": [_label_out(x) for x in g.labels],
        "edges": [
            {"u": _label_out(g.labels[u]), "v": _label_out(g.labels[v]), "w": w}
            for u, v, w in g.edges
        ],
    }


def dumps(obj) -> str:
    """Canonical JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGraphError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def read_graph(path) -> tuple[WeightedGraph, int]:
    path = Path(path)
    try:
        return graph_from_dict(loads(path.read_text(), str(path)))
    except InvalidGraphError as exc:
        msg = str(exc)
        if not msg.startswith(str(path)):
            msg = f"{path}: {msg}"
        raise InvalidGraphError(msg) from None


def write_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(dumps(graph_to_dict(g)))


def decomposition_to_dict(g: WeightedGraph, dec: Decomposition) -> dict:
    return {
        "mode": dec.mode,
        "factors": [graph_to_dict(f) for f in dec.factors],
        "map": {label_key(g.labels[u]): list(dec.map[u]) for u in range(g.n)},
        "scale": int(dec.scale) if Fraction(dec.scale).denominator == 1 else str(dec.scale),
    }


def decomposition_from_dict(obj, g: WeightedGraph) -> Decomposition:
    """Parse decomposition JSON against the graph it claims to decompose.

    Coordinates are not range-checked here; a map pointing outside a factor
    is a wrong decomposition, not a malformed one, and fails verification.
    """
    if not isinstance(obj, dict):
        raise DecompositionFormatError("decomposition JSON must be an object")
    for key in ("mode", "factors", "map"):
        if key not in obj:
            raise DecompositionFormatError(f"decomposition JSON is missing {key!r}")
    if not isinstance(obj["factors"], list) or not isinstance(obj["map"], dict):
        raise DecompositionFormatError("'factors' must be a list and 'map' an object")
    factors = []
    for i, f in enumerate(obj["factors"]):
        try:
            fg, _ = graph_from_dict(f)
        except InvalidGraphError as exc:
            raise DecompositionFormatError(f"factors[{i}]: {exc}") from None
        factors.append(fg)
    keys = {label_key(x): u for u, x in enumerate(g.labels)}
    vmap: list = [None] * g.n
    for key, coords in obj["map"].items():
        if key not in keys:
            raise DecompositionFormatError(f"map entry {key!r} is not a vertex of the graph")
        if not isinstance(coords, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coords
        ):
            raise DecompositionFormatError(f"map entry {key!r} must be a list of integers")
        if len(coords) != len(factors):
            raise DecompositionFormatError(
                f"map entry {key!r} has {len(coords)} coordinates for {len(factors)} factors"
            )
        vmap[keys[key]] = tuple(coords)
    missing = [g.labels[u] for u in range(g.n) if vmap[u] is None]
    if missing:
        raise DecompositionFormatError(f"map has no entry for vertex {missing[0]!r}")
    scale = obj.get("scale", 1)
    return Decomposition(str(obj["mode"]), tuple(factors), tuple(vmap), scale)


def read_decomposition(path, g: WeightedGraph) -> Decomposition:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DecompositionFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return decomposition_from_dict(obj, g)


def to_dot(g: WeightedGraph, classes: EquivalenceClasses | None = None, name: str = "G") -> str:
    """Graphviz text; with ``classes``, edges are colored by class."""
    lines = [f"graph {name} {{"]
    for x in g.labels:
        lines.append(f"  {json.dumps(label_key(x))};")
    for e, (u, v, w) in enumerate(g.edges):
        attrs = [f'label="{w}"']
        if classes is not None:
            k = classes.label[e]
            attrs.append(f'color="{PALETTE[k % len(PALETTE)]}"')
            attrs.append(f'class="{k}"')
        a, b = json.dumps(label_key(g.labels[u])), json.dumps(label_key(g.labels[v]))
        lines.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunReport:
    """What a CLI run did, how long each phase took, and what it produced."""

    command: str
    input_sha256: str | None = None
    algorithm: str | None = None
    timings_ms: dict[str, float] = field(default_factory=dict)
    payload: Any = None
    verdict: bool | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input_sha256": self.input_sha256,
            "algorithm": self.algorithm,
            "timings_ms": dict(self.timings_ms),
            "payload": self.payload,
            "verdict": self.verdict,
        }
