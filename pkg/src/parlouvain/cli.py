"""Command-line front end: ``parlouvain --input graph.txt --timing report.txt``."""
from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path

from . import graph_io
from .errors import GraphFormatError, GraphValidationError, UndefinedModularityError
from .louvain import LouvainConfig, final_partition, run
from .timing import emit_timing

log = logging.getLogger("parlouvain")

_RING = re.compile(r"^ring:(\d+),(\d+)$")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="parlouvain",
        description="Parallel Louvain community detection with per-process timing.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="graph file to read")
    src.add_argument("--generate", metavar="ring:K,C",
                     help="use a synthetic ring of K cliques of C vertices")
    p.add_argument("--format", choices=("edgelist", "matrixmarket"), default="edgelist")
    p.add_argument("--theta", type=float, default=1e-6,
                   help="relative Q change that ends a level's iterations")
    p.add_argument("--big-theta", type=float, default=1e-6,
                   help="minimum Q gain for another level")
    p.add_argument("--max-iters", type=int, default=100, help="iteration cap per level")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--engine", choices=("parallel", "sequential"), default="parallel")
    p.add_argument("--output", metavar="PATH", help="write the dendrogram here")
    p.add_argument("--partition", metavar="PATH", help="write final vertex labels here")
    p.add_argument("--timing", metavar="PATH", help="write the timing report here")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def load_graph(args):
    if args.generate is not None:
        m = _RING.match(args.generate)
        if not m:
            raise UsageError(f"--generate expects ring:K,C, got {args.generate!r}")
        try:
            return graph_io.generate_ring_of_cliques(int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    path = Path(args.input)
    try:
        with path.open(encoding="utf-8") as fh:
            if args.format == "matrixmarket":
                return graph_io.parse_matrix_market(fh)
            return graph_io.parse_edge_list(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = LouvainConfig(
            theta=args.theta,
            big_theta=args.big_theta,
            max_inner_iterations=args.max_iters,
            workers=args.threads,
            engine=args.engine,
        )
        g = load_graph(args)
        dendrogram, report = run(g, cfg)
    except (UsageError, ValueError, GraphFormatError, GraphValidationError) as exc:
        print(f"parlouvain: error: {exc}", file=sys.stderr)
        return 2
    except UndefinedModularityError as exc:
        print(f"parlouvain: error: {exc} (the graph has no edge weight)", file=sys.stderr)
        return 2

    ids = g.external_ids()
    try:
        if args.output:
            Path(args.output).write_text(graph_io.write_dendrogram(dendrogram, ids),
                                         encoding="utf-8")
        if args.partition:
            Path(args.partition).write_text(
                graph_io.write_partition(final_partition(dendrogram), ids), encoding="utf-8"
            )
        if args.timing:
            Path(args.timing).write_text(emit_timing(report), encoding="utf-8")
    except OSError as exc:
        print(f"parlouvain: error: cannot write output: {exc}", file=sys.stderr)
        return 2

    print(f"modularity={dendrogram.modularity_per_level[-1]!r}")
    return 0
