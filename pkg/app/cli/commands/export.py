"""
DOT export.
"""

import argparse

from app.cli.arguments import common_options, existing_file
from app.cli.commands.reeb import graph_outcome
from app.cli.loaders import load_graph
from app.cli.output import Outcome
from app.models.planarity import KuratowskiKind
from app.services import get_planarity_service


def dot(args: argparse.Namespace) -> Outcome:
    """
    Render a graph, optionally highlighting a Kuratowski witness.

    A planar graph has no witness and renders plainly.
    """
    graph = load_graph(args.graph)
    outcome = graph_outcome(graph, args.name)
    outcome.name = args.name
    if args.witness:
        kind = None if args.witness == "any" else KuratowskiKind(args.witness)
        result = get_planarity_service().planarity_test(graph, kind=kind, cap=args.cap)
        outcome.witness = result.witness
    return outcome


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``export`` command group."""
    parser = subparsers.add_parser("export", help="Export graphs")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser(
        "dot", parents=[common_options(default_format="dot")], help="Render a graph as DOT"
    )
    p.add_argument("--graph", type=existing_file, required=True, help="Graph file or domain spec")
    p.add_argument(
        "--witness",
        choices=["any"] + [k.value for k in KuratowskiKind],
        default=None,
        help="Highlight a Kuratowski subdivision",
    )
    p.add_argument("--name", default="reeb", help="Graph name in the DOT source")
    p.set_defaults(handler=dot, command_name="export dot")
