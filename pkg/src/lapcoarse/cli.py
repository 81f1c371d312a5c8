"""Command line front end.

Subcommands:

* ``analyze GRAPH``: structure report (reaches, cabals, components).
* ``kernels GRAPH --cluster-edges FILE --kind in|out``: kernel basis
  vectors as JSON.
* ``coarsen GRAPH --cluster-edges FILE --mode undirected|in|out``:
  reduced graph with node map, optionally also a Graphviz rendering.
* ``verify GRAPH --cluster-edges FILE --mode ... --betas 1e1,1e2,1e3,1e4
  --z -1``: resolvent convergence sweep, JSON or CSV.
* ``heat GRAPH --cluster-edges FILE --mode ... --beta 1e3 --t 1.0``: one
  heat-kernel comparison.

Data goes to stdout (or the ``--out``/``--report`` file); diagnostics go
to stderr.  Exit status: 0 success, 1 invalid input or usage, 2 violated
numerical invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .coarsen import coarsen
from .connectivity import build_cluster_set, connected_components, reaches
from .errors import InvariantViolation, ValidationError
from .graph import is_undirected, validate_boundedness
from .harness import heat_diff, sweep
from .io import (
    export_dot,
    parse_cluster_edges,
    parse_graph,
    serialize_coarsening,
    serialize_sweep,
    sweep_csv,
)
from .kernels import kernels_in, kernels_out

__all__ = ["main"]

_MODES = ("undirected", "in", "out")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _beta_ladder(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if len(set(values)) < 3:
        raise argparse.ArgumentTypeError("need at least three distinct scaling factors")
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="lapcoarse", description=__doc__.split("\n", 1)[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report the structure of a graph")
    p.add_argument("graph", help="graph document (JSON)")

    p = sub.add_parser("kernels", help="kernel bases of a cluster subgraph")
    p.add_argument("graph")
    p.add_argument(
        "--cluster-edges",
        required=True,
        metavar="FILE",
        help="JSON list of {src, dst} pairs referencing existing edges",
    )
    p.add_argument("--kind", choices=("in", "out"), default="in")

    p = sub.add_parser("coarsen", help="contract the clusters of a graph")
    p.add_argument("graph")
    p.add_argument("--cluster-edges", required=True, metavar="FILE")
    p.add_argument("--mode", choices=_MODES, required=True)
    p.add_argument("--out", metavar="FILE", help="write the reduced document here")
    p.add_argument("--dot", metavar="FILE", help="also write Graphviz text here")

    p = sub.add_parser("verify", help="resolvent convergence sweep")
    p.add_argument("graph")
    p.add_argument("--cluster-edges", required=True, metavar="FILE")
    p.add_argument("--mode", choices=_MODES, required=True)
    p.add_argument(
        "--betas",
        type=_beta_ladder,
        default=[1e1, 1e2, 1e3, 1e4],
        help="comma-separated scaling ladder (default 1e1,1e2,1e3,1e4)",
    )
    p.add_argument("--z", type=float, default=-1.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--report", metavar="FILE", help="write the report here")

    p = sub.add_parser("heat", help="one heat-kernel comparison")
    p.add_argument("graph")
    p.add_argument("--cluster-edges", required=True, metavar="FILE")
    p.add_argument("--mode", choices=_MODES, required=True)
    p.add_argument("--beta", type=float, default=1e3)
    p.add_argument("--t", type=float, default=1.0)
    return parser


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cluster_set(graph, args, mode: str):
    kind = "undirected" if mode == "undirected" else "directed"
    return build_cluster_set(
        graph, parse_cluster_edges(_read(args.cluster_edges)), kind
    )


def _cmd_analyze(args) -> int:
    graph = parse_graph(_read(args.graph))
    undirected = is_undirected(graph)
    report = {
        "nodes": graph.n,
        "edges": sum(1 for _ in graph.edges()),
        "directed": not undirected,
        "boundedness": validate_boundedness(graph),
        "reaches": [
            {
                "nodes": sorted(r.nodes),
                "cabal": sorted(r.cabal),
                "exclusive": sorted(r.exclusive),
                "common": sorted(r.common),
            }
            for r in reaches(graph)
        ],
    }
    if undirected:
        report["components"] = [sorted(c) for c in connected_components(graph)]
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", None)
    return 0


def _cmd_kernels(args) -> int:
    graph = parse_graph(_read(args.graph))
    cs = _cluster_set(graph, args, "in")
    basis = kernels_in(graph, cs) if args.kind == "in" else kernels_out(graph, cs)
    report = {
        "kind": basis.kind,
        "nodes": list(graph.nodes),
        "reaches": list(basis.labels),
        "right": {
            label: [float(x) for x in basis.right[:, k]]
            for k, label in enumerate(basis.labels)
        },
        "left": {
            label: [float(x) for x in basis.left[:, k]]
            for k, label in enumerate(basis.labels)
        },
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", None)
    return 0


def _cmd_coarsen(args) -> int:
    graph = parse_graph(_read(args.graph))
    cs = _cluster_set(graph, args, args.mode)
    result = coarsen(graph, cs, args.mode)
    _emit(serialize_coarsening(result), args.out)
    if args.dot:
        _emit(export_dot(result), args.dot)
    return 0


def _cmd_verify(args) -> int:
    graph = parse_graph(_read(args.graph))
    cs = _cluster_set(graph, args, args.mode)
    report = sweep(graph, cs, args.mode, args.betas, z=args.z)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    text = serialize_sweep(report) if args.format == "json" else sweep_csv(report)
    _emit(text, args.report)
    return 0


def _cmd_heat(args) -> int:
    graph = parse_graph(_read(args.graph))
    cs = _cluster_set(graph, args, args.mode)
    value = heat_diff(graph, cs, args.mode, args.beta, args.t)
    report = {
        "mode": args.mode,
        "beta": args.beta,
        "t": args.t,
        "heat_diff": value,
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", None)
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "kernels": _cmd_kernels,
    "coarsen": _cmd_coarsen,
    "verify": _cmd_verify,
    "heat": _cmd_heat,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
