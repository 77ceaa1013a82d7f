"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input, 2 input that breaks
an operation's contract (disconnected, not minimal, too large...), 3 failed
verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bench import ALGORITHMS, FAMILIES, rows_to_csv, run_bench, slopes
from .decompose import factorize, pseudofactorize, verify_decomposition
from .embed import (
    DEFAULT_BUDGET,
    COUNT_MAX_N,
    compose_from_pseudofactors,
    factor_embedding_counts,
    hypercube_embed_bruteforce,
)
from .errors import ContractViolation, DecompositionFormatError, InvalidGraphError, VerificationError
from .graph import apsp, minimalize
from .io import (
    RunReport,
    decomposition_to_dict,
    dumps,
    graph_to_dict,
    label_key,
    read_decomposition,
    read_graph,
    sha256_file,
    to_dot,
)
from .relations import build_relation_graph, explain

EXIT_OK, EXIT_INPUT, EXIT_CONTRACT, EXIT_VERIFY = 0, 1, 2, 3


class _Clock:
    def __init__(self, report):
        self.report = report

    def __call__(self, phase, fn, *args, **kwargs):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        self.report.timings_ms[phase] = round((time.perf_counter() - t) * 1000.0, 3)
        return out


def _load(args, report, clock):
    report.input_sha256 = sha256_file(args.graph)
    g, scale = clock("parse", read_graph, args.graph)
    d = clock("apsp", apsp, g)
    if getattr(args, "minimalize", False):
        g = clock("minimalize", minimalize, g, d)
        d = clock("apsp", apsp, g)
    return g, d, scale


def _decompose(args, mode):
    report = RunReport(mode, algorithm=args.algorithm if mode == "pseudofactor" else "gw")
    clock = _Clock(report)
    g, d, scale = _load(args, report, clock)
    verify = True if args.verify else None
    if mode == "pseudofactor":
        dec = clock(
            "decompose", pseudofactorize, g, d,
            algorithm=args.algorithm, verify=False, scale=scale,
            check_invariant=args.check_invariant,
        )
    else:
        dec = clock("decompose", factorize, g, d, verify=False, scale=scale)
    if verify or (verify is None and g.n <= 64):
        report.verdict = clock("verify", verify_decomposition, g, dec, d)
    payload = decomposition_to_dict(g, dec)
    if args.explain:
        kind = "theta" if mode == "pseudofactor" else "theta_union_tau"
        payload["explain"] = explain(g, build_relation_graph(g, d, kind), dec.classes)
    report.payload = payload
    if args.format == "dot":
        text = to_dot(g, dec.classes)
    else:
        text = dumps(payload)
    return report, text


def cmd_pseudofactor(args):
    return _decompose(args, "pseudofactor")


def cmd_factor(args):
    return _decompose(args, "factor")


def cmd_minimalize(args):
    report = RunReport("minimalize")
    clock = _Clock(report)
    args.minimalize = True
    g, _, scale = _load(args, report, clock)
    payload = graph_to_dict(g)
    if scale != 1:
        payload["scale"] = scale
    report.payload = payload
    return report, to_dot(g) if args.format == "dot" else dumps(payload)


def cmd_verify(args):
    report = RunReport("verify")
    clock = _Clock(report)
    g, d, _ = _load(args, report, clock)
    dec = clock("parse", read_decomposition, args.decomposition, g)
    report.verdict = clock("verify", verify_decomposition, g, dec, d)
    report.payload = {"verdict": report.verdict}
    return report, dumps(report.payload)


def cmd_embed(args):
    report = RunReport("embed")
    clock = _Clock(report)
    g, d, _ = _load(args, report, clock)
    if args.via_factors:
        dec = clock("decompose", pseudofactorize, g, d, verify=False)
        parts = []
        for f in dec.factors:
            cap = args.max_dim if args.max_dim is not None else None
            parts.append(hypercube_embed_bruteforce(f, None, cap, budget=args.budget))
        emb = None
        if all(p is not None for p in parts):
            emb = clock("compose", compose_from_pseudofactors, g, dec, parts)
            if args.max_dim is not None and emb.dimension > args.max_dim:
                emb = None
    else:
        emb = clock("search", hypercube_embed_bruteforce, g, d, args.max_dim, budget=args.budget)
    if emb is None:
        payload = {"embeddable": False, "dimension": None, "strings": {}}
    else:
        text = emb.as_text()
        payload = {
            "embeddable": True,
            "dimension": emb.dimension,
            "strings": {label_key(g.labels[u]): text[u] for u in range(g.n)},
        }
    report.payload = payload
    return report, dumps(payload)


def cmd_count_embeddings(args):
    report = RunReport("count-embeddings")
    clock = _Clock(report)
    g, _, _ = _load(args, report, clock)
    dec, counts = clock(
        "count", factor_embedding_counts, g, args.max_dim, budget=args.budget, max_n=args.max_n
    )
    total = 1
    for c in counts:
        total *= c
    payload = {
        "count": total,
        "factors": [{"n": f.n, "m": f.m, "count": c} for f, c in zip(dec.factors, counts)],
    }
    report.payload = payload
    return report, dumps(payload)


def cmd_bench(args):
    report = RunReport("bench", algorithm=",".join(args.algorithms))
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    t = time.perf_counter()
    rows = run_bench(args.family, sizes, args.algorithms, seed=args.seed, repeats=args.repeats)
    report.timings_ms["total"] = round((time.perf_counter() - t) * 1000.0, 3)
    report.payload = {"rows": rows, "slopes": slopes(rows)}
    if args.slope:
        for algo, s in report.payload["slopes"].items():
            print(f"# {algo} relation-phase log-log slope vs n: {s:.3f}", file=sys.stderr)
    return report, rows_to_csv(rows)


def _algorithms(text):
    algos = [a.strip() for a in text.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown algorithm {a!r}")
    return algos


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--verify", action="store_true", help="always run the independent verifier")
    common.add_argument("--explain", action="store_true", help="list each class with a witness chain")
    common.add_argument("--minimalize", action="store_true", help="drop edges longer than their endpoints' distance first")
    common.add_argument("--algorithm", choices=ALGORITHMS, default="gw")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--check-invariant", action="store_true", help="feder-tree: check partial classes while running")
    common.add_argument("--report", metavar="FILE", help="write a JSON run report here")
    common.add_argument("-o", "--output", metavar="FILE", help="write the result here instead of stdout")

    p = argparse.ArgumentParser(
        prog="wgfactor",
        description="Cartesian factorization and pseudofactorization of weighted graphs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pseudofactor", parents=[common], help="irreducible pseudofactorization of a minimal graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_pseudofactor)

    s = sub.add_parser("factor", parents=[common], help="prime factorization")
    s.add_argument("graph")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("minimalize", parents=[common], help="print the minimal graph with the same metric")
    s.add_argument("graph")
    s.set_defaults(func=cmd_minimalize)

    s = sub.add_parser("verify", parents=[common], help="check a decomposition file against a graph")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("embed", parents=[common], help="hypercube embedding by exhaustive search")
    s.add_argument("graph")
    s.add_argument("--target", choices=("hypercube",), default="hypercube")
    s.add_argument("--max-dim", type=int, default=None)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--via-factors", action="store_true", help="embed each pseudofactor and concatenate")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("count-embeddings", parents=[common], help="count non-equivalent hypercube embeddings")
    s.add_argument("graph")
    s.add_argument("--max-dim", type=int, default=None)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--max-n", type=int, default=COUNT_MAX_N)
    s.set_defaults(func=cmd_count_embeddings)

    s = sub.add_parser("bench", parents=[common], help="time both routes on a graph family, CSV out")
    s.add_argument("--family", choices=FAMILIES, default="grid")
    s.add_argument("--sizes", default="10,20,30")
    s.add_argument("--algorithms", type=_algorithms, default=list(ALGORITHMS))
    s.add_argument("--repeats", type=int, default=1)
    s.add_argument("--slope", action="store_true", help="print log-log slopes to stderr")
    s.set_defaults(func=cmd_bench)
    return p


def _emit(args, report, text):
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as f:
            f.write(dumps(report.to_dict()))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, text = args.func(args)
    except (OSError, InvalidGraphError, DecompositionFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    try:
        _emit(args, report, text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report.verdict is False:
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
