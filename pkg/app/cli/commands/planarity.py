"""
Planarity and level planarity decisions.
"""

import argparse

from app.cli.arguments import existing_file
from app.cli.loaders import load_graph
from app.cli.output import Outcome
from app.models.planarity import KuratowskiKind
from app.schemas import LevelPlanarityResponse, PlanarityResponse
from app.services import get_planarity_service
from app.utils.rationals import format_rational


def planarity(args: argparse.Namespace) -> Outcome:
    """
    Planarity test with embedding or Kuratowski witness.

    **Exit codes:** 0 when planar, 1 when not, 3 above the vertex cap.
    """
    kind = KuratowskiKind(args.kind) if args.kind else None
    graph = load_graph(args.graph)
    result = get_planarity_service().planarity_test(graph, kind=kind, cap=args.cap)
    if result.planar:
        summary = f"planar: yes ({result.faces} faces)"
    else:
        witness = result.witness
        summary = (
            f"planar: no\n"
            f"witness: {witness.kind.value} on branch vertices "
            f"{' '.join(str(v) for v in witness.branch_vertices)}"
        )
    return Outcome(
        PlanarityResponse.from_model(result),
        summary,
        verdict=result.planar,
        graph=graph,
        witness=result.witness,
    )


def level_planarity(args: argparse.Namespace) -> Outcome:
    """
    Level planarity test with per-level vertex orders.

    **Exit codes:** 0 when level planar, 1 when not, 3 above the cap.
    """
    service = get_planarity_service()
    graph = load_graph(args.graph)
    if args.oracle:
        verdict = service.level_planarity_oracle(graph)
        document = LevelPlanarityResponse(level_planar=verdict)
        summary = f"level planar (exhaustive): {'yes' if verdict else 'no'}"
        return Outcome(document, summary, verdict=verdict, graph=graph)

    result = service.level_planarity_test(graph, cap=args.cap)
    if not result.level_planar:
        return Outcome(
            LevelPlanarityResponse.from_model(result), "level planar: no", verdict=False, graph=graph
        )
    embedding = result.embedding
    inversions = service.count_inversions(embedding)
    lines = ["level planar: yes"]
    lines += [
        f"  {format_rational(level)}: {' '.join(str(v) for v in order)}"
        for level, order in embedding.orders
    ]
    return Outcome(
        LevelPlanarityResponse.from_model(result, inversions),
        "\n".join(lines),
        verdict=True,
        graph=embedding.graph,
    )


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register ``planarity`` and ``levelplanarity``."""
    p = subparsers.add_parser("planarity", parents=[common], help="Planarity test")
    p.add_argument("--graph", type=existing_file, required=True, help="Graph file or domain spec")
    p.add_argument(
        "--kind",
        choices=[k.value for k in KuratowskiKind],
        default=None,
        help="Search for a witness of this kind first",
    )
    p.set_defaults(handler=planarity, command_name="planarity")

    p = subparsers.add_parser("levelplanarity", parents=[common], help="Level planarity test")
    p.add_argument("--graph", type=existing_file, required=True, help="Graph file or domain spec")
    p.add_argument(
        "--oracle", action="store_true", help="Use the exhaustive search (small graphs only)"
    )
    p.set_defaults(handler=level_planarity, command_name="levelplanarity")
