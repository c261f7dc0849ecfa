"""
Reeb graph commands.
"""

import argparse

from app.cli.arguments import existing_file
from app.cli.loaders import load_domain, load_graph
from app.cli.output import Outcome
from app.models.graph import LeveledGraph
from app.schemas import GraphDocument
from app.services import get_graph_service, get_grid_oracle, get_reeb_service
from app.utils.rationals import format_rational


def graph_outcome(graph: LeveledGraph, title: str) -> Outcome:
    """Outcome carrying a graph document."""
    if graph.is_connected():
        betti = str(get_graph_service().betti1(graph))
    else:
        betti = f"undefined ({len(graph.components())} components)"
    levels = ", ".join(format_rational(t) for t in graph.levels())
    summary = (
        f"{title}: {graph.num_vertices} vertices, {graph.num_edges} edges, betti1 {betti}\n"
        f"levels: {levels}"
    )
    return Outcome(GraphDocument.from_model(graph), summary, graph=graph)


def exact(args: argparse.Namespace) -> Outcome:
    """Exact Reeb graph of a planar circle arrangement."""
    graph = get_reeb_service().reeb_exact(load_domain(args.domain))
    return graph_outcome(graph, "reeb graph")


def oracle(args: argparse.Namespace) -> Outcome:
    """Reeb graph from the grid oracle."""
    graph = get_grid_oracle().reeb_grid_oracle(load_domain(args.domain), resolution=args.resolution)
    return graph_outcome(graph, "grid reeb graph")


def product(args: argparse.Namespace) -> Outcome:
    """Leveled fiber product of two graphs."""
    graph = get_graph_service().fiber_product(
        load_graph(args.first), load_graph(args.second), strict=args.strict
    )
    return graph_outcome(graph, "fiber product")


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``reeb`` command group."""
    parser = subparsers.add_parser("reeb", help="Compute Reeb graphs")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser("exact", parents=[common], help="Exact Reeb graph of a planar domain")
    p.add_argument("--domain", type=existing_file, required=True, help="Domain or band spec")
    p.set_defaults(handler=exact, command_name="reeb exact")

    p = commands.add_parser("oracle", parents=[common], help="Grid oracle Reeb graph")
    p.add_argument("--domain", type=existing_file, required=True, help="Domain or band spec")
    p.set_defaults(handler=oracle, command_name="reeb oracle")

    p = commands.add_parser("product", parents=[common], help="Leveled fiber product")
    p.add_argument("--first", type=existing_file, required=True, help="First graph or domain")
    p.add_argument("--second", type=existing_file, required=True, help="Second graph or domain")
    p.add_argument(
        "--strict",
        action="store_true",
        help="Reject factors whose vertex levels coincide inside the common range",
    )
    p.set_defaults(handler=product, command_name="reeb product")
