"""
Graph commands: invariants and isomorphism.
"""

import argparse

from app.cli.arguments import existing_file, rational_arg
from app.cli.loaders import load_graph
from app.cli.output import Outcome
from app.schemas import IsomorphismResponse
from app.schemas.documents import rational
from app.schemas.reports import SheetCount, graph_stats
from app.services import get_graph_service


def stats(args: argparse.Namespace) -> Outcome:
    """
    Betti number, degree sequence, levels and sheet counts.

    Sheet counts are taken at ``--level`` values, or at the midpoints between
    consecutive vertex levels when none is given.
    """
    service = get_graph_service()
    graph = load_graph(args.graph)
    levels = args.level or service.regular_levels(graph)
    counts = [SheetCount(level=rational(t), count=service.sheet_count(graph, t)) for t in levels]
    document = graph_stats(graph, service.betti1(graph), counts)

    lines = [
        f"vertices: {document.vertices}",
        f"edges: {document.edges}",
        f"betti1: {document.betti1}",
        f"degrees: {' '.join(str(d) for d in document.degree_sequence)}",
        f"levels: {', '.join(document.levels)}",
    ]
    lines += [f"sheets at {c.level}: {c.count}" for c in counts]
    return Outcome(document, "\n".join(lines), graph=graph)


def iso(args: argparse.Namespace) -> Outcome:
    """
    Isomorphism test of two graphs.

    **Exit codes:** 0 when isomorphic, 1 when not, 3 above the vertex cap.
    """
    isomorphic, mapping = get_graph_service().is_isomorphic(
        load_graph(args.first), load_graph(args.second), mode=args.mode, cap=args.cap
    )
    document = IsomorphismResponse(mode=args.mode, isomorphic=isomorphic, mapping=mapping)
    summary = f"{args.mode} isomorphic: {'yes' if isomorphic else 'no'}"
    return Outcome(document, summary, verdict=isomorphic)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``graph`` command group."""
    parser = subparsers.add_parser("graph", help="Graph invariants")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser("stats", parents=[common], help="Betti number and sheet counts")
    p.add_argument("--graph", type=existing_file, required=True, help="Graph file or domain spec")
    p.add_argument(
        "--level", type=rational_arg, action="append", default=[], help="Regular level; repeatable"
    )
    p.set_defaults(handler=stats, command_name="graph stats")

    p = commands.add_parser("iso", parents=[common], help="Isomorphism test")
    p.add_argument("--first", type=existing_file, required=True, help="First graph")
    p.add_argument("--second", type=existing_file, required=True, help="Second graph")
    p.add_argument(
        "--mode",
        choices=("plain", "leveled"),
        default="plain",
        help="plain ignores levels; leveled preserves the order of levels",
    )
    p.set_defaults(handler=iso, command_name="graph iso")
