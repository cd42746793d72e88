"""Command line entry point: ``degsplit <subcommand> ...``.

Every subcommand prints (or writes with ``--report``) a JSON or CSV report
and exits with status 1 when any bound is violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import validators as V
from .generators import gen_random_multigraph, gen_random_regular, gen_shannon
from .graph import read_graph
from .harness import (ExperimentConfig, Report, evaluate_directed, evaluate_edge_color,
                      evaluate_mend, evaluate_multiway, evaluate_undirected, run_experiment)


def _emit(report: Report, args) -> int:
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0 if report.passed else 1


def _graph_record(args, g, body: dict) -> Report:
    rec = {"algorithm": args.command, "family": "file", "n": g.n, "m": g.m,
           "max_degree": g.max_degree, "seed": getattr(args, "seed", None),
           "eps": getattr(args, "epsilon", None), "k": getattr(args, "k", None)}
    rec.update(body)
    return Report([rec])


def cmd_split_directed(args) -> int:
    g = read_graph(args.input)
    return _emit(_graph_record(args, g, evaluate_directed(g, args.epsilon)), args)


def cmd_split_undirected(args) -> int:
    g = read_graph(args.input)
    return _emit(_graph_record(args, g, evaluate_undirected(g, args.epsilon)), args)


def cmd_multiway(args) -> int:
    g = read_graph(args.input)
    return _emit(_graph_record(args, g, evaluate_multiway(g, args.epsilon, args.k)), args)


def cmd_color_edges(args) -> int:
    g = read_graph(args.input)
    return _emit(_graph_record(args, g, evaluate_edge_color(g, args.epsilon)), args)


def cmd_mend_check(args) -> int:
    body = evaluate_mend(args.epsilon, args.delta, args.layers, args.brute_radius)
    rec = {"algorithm": "mend", "eps": args.epsilon, "d": args.delta, "layers": args.layers}
    rec.update(body)
    return _emit(Report([rec]), args)


def cmd_validate(args) -> int:
    """Check a labeling file ``{"labels": {edge id: value}}`` against its bound."""
    g = read_graph(args.input)
    with open(args.labels, encoding="utf-8") as fh:
        raw = json.load(fh)
    labels = {int(k): int(v) for k, v in raw.get("labels", raw).items()}
    if args.kind == "directed":
        bad = V.check_orientation(g, labels, args.epsilon)
    elif args.kind == "undirected":
        bad = V.check_red_blue(g, labels, args.epsilon)
    elif args.kind == "multiway":
        bad = V.check_partition(g, labels, args.k, args.epsilon)
    else:
        bad = V.check_edge_coloring(g, labels, V.coloring_budget(args.epsilon, g.max_degree))
    rec = {"algorithm": "validate", "kind": args.kind, "n": g.n, "m": g.m, "eps": args.epsilon,
           "violations": len(bad), "passed": not bad,
           "details": [vars(b) for b in bad[:50]]}
    return _emit(Report([rec]), args)


def cmd_gen(args) -> int:
    if args.family == "random-regular":
        g = gen_random_regular(args.n, args.d, args.seed)
    elif args.family == "random-multigraph":
        g = gen_random_multigraph(args.n, args.d, args.seed)
    else:
        g = gen_shannon(args.mu)
    text = json.dumps(g.to_json()) + "\n" if args.json else g.to_edge_list()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = ExperimentConfig.from_json(fh.read())
    return _emit(run_experiment(cfg), args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degsplit", description="Degree splitting toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, eps=True):
        if graph:
            sp.add_argument("--input", required=True, help="edge-list or JSON graph file")
        if eps:
            sp.add_argument("--epsilon", type=float, required=True)
        sp.add_argument("--report", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("split-directed", help="orient edges with small in/out discrepancy")
    common(sp)
    sp.add_argument("--seed", type=int, default=0, help="recorded only; the pipeline is deterministic")
    sp.set_defaults(func=cmd_split_directed)

    sp = sub.add_parser("split-undirected", help="red/blue edge coloring with small discrepancy")
    common(sp)
    sp.add_argument("--seed", type=int, default=0, help="recorded only; the pipeline is deterministic")
    sp.set_defaults(func=cmd_split_undirected)

    sp = sub.add_parser("multiway", help="split edges into 2^k parts")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_multiway)

    sp = sub.add_parser("color-edges", help="proper edge coloring within (3/2+eps)*Delta colors")
    common(sp)
    sp.set_defaults(func=cmd_color_edges)

    sp = sub.add_parser("mend-check", help="layered lower-bound instance and bias certificate")
    common(sp, graph=False)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--layers", type=int, required=True)
    sp.add_argument("--brute-radius", type=int, default=None)
    sp.set_defaults(func=cmd_mend_check)

    sp = sub.add_parser("validate", help="check a labeling file against its bound")
    common(sp)
    sp.add_argument("--labels", required=True)
    sp.add_argument("--kind", choices=("directed", "undirected", "multiway", "coloring"), required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("gen", help="write a generated graph")
    sp.add_argument("--family", choices=("random-regular", "random-multigraph", "shannon"), default="random-regular")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--d", type=int, default=0)
    sp.add_argument("--mu", type=float, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true", help="JSON instead of edge-list output")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("run", help="run an experiment grid from a JSON config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--report")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_run)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
