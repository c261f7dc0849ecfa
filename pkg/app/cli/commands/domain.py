"""
Domain commands: build band domains, check transversality, count slices.
"""

import argparse

from app.cli.arguments import existing_file, point_arg, positive_int, rational_arg
from app.cli.loaders import load_band, load_domain
from app.cli.output import Outcome
from app.schemas import DomainDocument, SliceResponse, TransversalityResponse
from app.schemas.documents import rational
from app.schemas.reports import DomainCheckResponse, PointMembership
from app.services import get_domain_service, get_reeb_service
from app.utils.rationals import format_rational


def build(args: argparse.Namespace) -> Outcome:
    """
    Expand a band spec into its domain.

    **Exit codes:** 0, or 2 for an invalid band spec.
    """
    spec = load_band(args.band)
    domain = get_domain_service().build_band_domain(spec)
    summary = (
        f"domain: {domain.ambient_dim} variables, {domain.num_constraints} constraints, "
        f"{len(domain.intended_intersections)} intended contacts"
    )
    return Outcome(DomainDocument.from_model(domain), summary)


def check(args: argparse.Namespace) -> Outcome:
    """
    Transversality check plus membership of given points.

    **Exit codes:** 0 when transversal, 1 when some sample fails.
    """
    service = get_domain_service()
    domain = load_domain(args.domain)
    report = service.check_transversality(
        domain,
        samples=args.sample or None,
        per_constraint=args.per_constraint,
        tolerance=args.tolerance or 0,
    )
    memberships = [
        PointMembership(
            point=[rational(c) for c in domain.check_point(p)],
            membership=service.closure_membership(domain, p).value,
        )
        for p in args.point
    ]
    document = DomainCheckResponse(
        transversality=TransversalityResponse.from_model(report),
        memberships=memberships,
    )

    lines = [
        f"transversal: {'yes' if report.passed else 'no'} "
        f"({len(report.samples)} samples, {len(report.skipped)} skipped)"
    ]
    if report.failing:
        lines.append(f"failing samples: {report.failing}")
    for entry in memberships:
        lines.append(f"({', '.join(entry.point)}): {entry.membership}")
    return Outcome(document, "\n".join(lines), verdict=report.passed)


def slice_count(args: argparse.Namespace) -> Outcome:
    """Connected components of the slice at a level."""
    domain = load_domain(args.domain)
    report = get_reeb_service().count_components_at(domain, args.level)
    summary = f"level {format_rational(report.level)}: {report.count} components"
    return Outcome(SliceResponse.from_model(report), summary)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``domain`` command group."""
    parser = subparsers.add_parser("domain", help="Build and check domains")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser("build", parents=[common], help="Expand a band spec into a domain")
    p.add_argument("--band", type=existing_file, required=True, help="Band spec file")
    p.set_defaults(handler=build, command_name="domain build")

    p = commands.add_parser(
        "check", parents=[common], help="Transversality check and membership of given points"
    )
    p.add_argument("--domain", type=existing_file, required=True, help="Domain or band spec")
    p.add_argument(
        "--sample",
        type=point_arg,
        action="append",
        default=[],
        help="Explicit sample point; repeatable (default: generated boundary samples)",
    )
    p.add_argument(
        "--per-constraint", type=positive_int, default=None, help="Generated samples per constraint"
    )
    p.add_argument(
        "--point", type=point_arg, action="append", default=[], help="Point to classify; repeatable"
    )
    p.set_defaults(handler=check, command_name="domain check")

    p = commands.add_parser("slice", parents=[common], help="Count slice components at a level")
    p.add_argument("--domain", type=existing_file, required=True, help="Domain or band spec")
    p.add_argument("--level", type=rational_arg, required=True, help="Level t of x1")
    p.set_defaults(handler=slice_count, command_name="domain slice")
