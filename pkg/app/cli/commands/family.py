"""
Family generators.

With ``--out`` the lifted domain, the factor band spec and the predicted
graph are also written next to the report as ``<stem>.domain.json``,
``<stem>.band.json`` and ``<stem>.graph.json``.
"""

import argparse

from app.cli.arguments import existing_file, point_arg, positive_int, rational_arg
from app.cli.commands.conditions import add_outer_options, outer_levels
from app.cli.loaders import load_domain, load_graph
from app.cli.output import Outcome
from app.models.theorems import FamilyResult, Reduction
from app.schemas import FamilyResultResponse
from app.services import get_graph_service, get_theorem_service
from app.utils.rationals import format_rational


def family_outcome(result: FamilyResult) -> Outcome:
    prediction = result.prediction
    lines = [
        f"{result.tag.value} member {tuple(result.indices)}",
        f"prediction: {prediction.num_vertices} vertices, {prediction.num_edges} edges, "
        f"betti1 {get_graph_service().betti1(prediction)}",
        f"manifold dimension: {result.manifold_dimension}",
    ]
    lines += [
        f"fold over ({format_rational(f.t1)}, {format_rational(f.t2)}): {f.fold}"
        for f in result.fold_counts
    ]
    lines += [f"{name}: {format_rational(t)}" for name, t in sorted(result.auxiliary_levels.items())]
    return Outcome(
        FamilyResultResponse.from_model(result),
        "\n".join(lines),
        graph=prediction,
        artifacts={"domain": result.domain, "band": result.factor, "graph": prediction},
    )


def _base_graph(args: argparse.Namespace):
    return load_graph(args.base_graph) if args.base_graph else None


def single_band(args: argparse.Namespace) -> Outcome:
    """
    Member ``i`` of the mt1 or mt2 family.

    **Exit codes:** 0, or 2 when the base graph fails the hypotheses.
    """
    service = get_theorem_service()
    generate = service.mt1_family if args.tag == "mt1" else service.mt2_family
    result = generate(
        load_domain(args.base),
        args.t1,
        args.t2,
        args.i,
        factor_center=args.factor_center,
        factor_radius=args.factor_radius,
        base_graph=_base_graph(args),
    )
    return family_outcome(result)


def three_band(args: argparse.Namespace) -> Outcome:
    """
    Member (i1, i2, i3) of the mt3 family.

    **Exit codes:** 0, or 2 when the hypotheses of the reduction fail.
    """
    result = get_theorem_service().mt3_family(
        load_domain(args.base),
        args.t1,
        args.t2,
        (args.i1, args.i2, args.i3),
        reduction=Reduction(args.reduction),
        outer_levels=outer_levels(args),
        factor_radius=args.factor_radius,
        base_graph=_base_graph(args),
    )
    return family_outcome(result)


def _add_base_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--base", type=existing_file, required=True, help="Base domain or band spec")
    parser.add_argument(
        "--base-graph",
        type=existing_file,
        default=None,
        help="Reeb graph of the base; required when it is not a planar arrangement",
    )
    parser.add_argument("--t1", type=rational_arg, required=True, help="Lower cut level")
    parser.add_argument("--t2", type=rational_arg, required=True, help="Upper cut level")
    parser.add_argument(
        "--factor-radius", type=rational_arg, default=None, help="Outer radius of the factor"
    )


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``family`` command group."""
    parser = subparsers.add_parser("family", help="Generate family members")
    commands = parser.add_subparsers(dest="tag", required=True, metavar="TAG")

    for tag, title in (("mt1", "non-level-planar"), ("mt2", "K3,3")):
        p = commands.add_parser(tag, parents=[common], help=f"Member of the {title} family")
        _add_base_options(p)
        p.add_argument("--i", type=positive_int, required=True, help="Family index")
        p.add_argument(
            "--factor-center", type=point_arg, default=None, help="Outer circle center of the factor"
        )
        p.set_defaults(handler=single_band, command_name=f"family {tag}")

    p = commands.add_parser("mt3", parents=[common], help="Member of the K5 family")
    _add_base_options(p)
    p.add_argument("--i1", type=positive_int, required=True, help="Index of the lower band")
    p.add_argument("--i2", type=positive_int, required=True, help="Index of the middle band")
    p.add_argument("--i3", type=positive_int, required=True, help="Index of the upper band")
    add_outer_options(p)
    p.set_defaults(handler=three_band, command_name="family mt3")
