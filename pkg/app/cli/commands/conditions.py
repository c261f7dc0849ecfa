"""
Hypothesis checks of the family constructions.
"""

import argparse
from typing import List

from app.cli.arguments import existing_file, rational_arg
from app.cli.loaders import load_graph
from app.cli.output import Outcome
from app.models.theorems import ConditionReport, Reduction, TheoremTag
from app.schemas import ConditionReportResponse
from app.services import get_theorem_service
from app.utils.exceptions import InvalidParameterError


def outer_levels(args: argparse.Namespace):
    """(t1', t2') from the command line, or None when neither is given."""
    given = (args.t1_outer, args.t2_outer)
    if given == (None, None):
        return None
    if None in given:
        raise InvalidParameterError("Give both --t1-outer and --t2-outer, or neither")
    return given


def report_lines(report: ConditionReport) -> List[str]:
    lines = [f"{report.tag.value}: {'passed' if report.passed else 'failed'}"]
    for condition in report.conditions:
        detail = f" ({condition.detail})" if condition.detail else ""
        lines.append(f"  {condition.name}: {'ok' if condition.passed else 'FAIL'}{detail}")
    for arc in report.arcs:
        lines.append(f"  arc {arc.label}: {' '.join(str(v) for v in arc.vertices)}")
    return lines


def check(args: argparse.Namespace) -> Outcome:
    """
    Validate the hypotheses of one construction.

    **Exit codes:** 0 when every condition holds, 1 otherwise.
    """
    tag = TheoremTag(args.tag)
    if tag is not TheoremTag.THM2 and (args.t1 is None or args.t2 is None):
        raise InvalidParameterError(f"--t1 and --t2 are required for {tag.value}")
    report = get_theorem_service().validate_conditions(
        load_graph(args.graph),
        args.t1,
        args.t2,
        tag=tag,
        outer_levels=outer_levels(args),
        reduction=Reduction(args.reduction),
    )
    return Outcome(
        ConditionReportResponse.from_model(report),
        "\n".join(report_lines(report)),
        verdict=report.passed,
        graph=report.graph,
    )


def add_outer_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t1-outer", type=rational_arg, default=None, help="Outer level t1' (mt3)")
    parser.add_argument("--t2-outer", type=rational_arg, default=None, help="Outer level t2' (mt3)")
    parser.add_argument(
        "--reduction",
        choices=[r.value for r in Reduction],
        default=Reduction.NONE.value,
        help="Offset reduction whose extra hypotheses are checked (mt3)",
    )


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``conditions`` command group."""
    parser = subparsers.add_parser("conditions", help="Check construction hypotheses")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser("check", parents=[common], help="Check the conditions of one theorem")
    p.add_argument("--graph", type=existing_file, required=True, help="Graph file or domain spec")
    p.add_argument("--tag", choices=[t.value for t in TheoremTag], required=True)
    p.add_argument("--t1", type=rational_arg, default=None, help="Lower cut level")
    p.add_argument("--t2", type=rational_arg, default=None, help="Upper cut level")
    add_outer_options(p)
    p.set_defaults(handler=check, command_name="conditions check")
