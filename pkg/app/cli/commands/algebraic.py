"""
Algebraic model commands.
"""

import argparse

from app.cli.arguments import existing_file, point_arg, positive_int
from app.cli.loaders import load_domain, load_model
from app.cli.output import Outcome
from app.models.algebraic import DimensionPolicy
from app.schemas import CertificateResponse, FiberTypeSchema, ModelDocument
from app.services import get_algebraic_service


def emit(args: argparse.Namespace) -> Outcome:
    """Emit the polynomial system of a domain."""
    model = get_algebraic_service().emit_model(load_domain(args.domain), args.m, args.policy)
    lines = [f"{model.l} polynomials in {model.num_vars} variables (m = {model.m})"]
    lines += [f"  {name}: {size} from index {start}" for name, start, size in model.layout()]
    return Outcome(ModelDocument.from_model(model), "\n".join(lines))


def certify(args: argparse.Namespace) -> Outcome:
    """
    Rank, fiber dimension and emptiness certificates.

    **Exit codes:** 0 when every certificate holds, 1 otherwise.
    """
    report = get_algebraic_service().certify(
        load_model(args.model), seed=args.seed, tolerance=args.tolerance
    )
    lines = [
        f"certified: {'yes' if report.passed else 'no'}",
        f"  rank {report.expected_rank}: {'ok' if report.rank_ok else 'FAIL'}",
        f"  fiber dimension {report.expected_fiber_dimension}: "
        f"{'ok' if report.fiber_dimension_ok else 'FAIL'}",
        f"  empty outside: {'ok' if report.emptiness_ok else 'FAIL'}",
    ]
    return Outcome(CertificateResponse.from_model(report), "\n".join(lines), verdict=report.passed)


def fiber(args: argparse.Namespace) -> Outcome:
    """Closed-form fiber over a point of the base."""
    fiber_type = get_algebraic_service().fiber_type(load_model(args.model), args.point)
    document = FiberTypeSchema.from_model(fiber_type)
    factors = ", ".join(f"S^{f.dimension}(r^2={f.radius_squared})" for f in document.factors)
    summary = f"{document.kind} of dimension {document.dimension}" + (f": {factors}" if factors else "")
    return Outcome(document, summary)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register the ``algebraic`` command group."""
    parser = subparsers.add_parser("algebraic", help="Emit and certify algebraic models")
    commands = parser.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = commands.add_parser("emit", parents=[common], help="Emit the model of a domain")
    p.add_argument("--domain", type=existing_file, required=True, help="Domain or band spec")
    p.add_argument("--m", type=positive_int, default=None, help="Manifold dimension (default k + l)")
    p.add_argument(
        "--policy",
        choices=[policy.value for policy in DimensionPolicy],
        default=None,
        help="Sphere dimension allocation",
    )
    p.set_defaults(handler=emit, command_name="algebraic emit")

    p = commands.add_parser("certify", parents=[common], help="Certify an emitted model")
    p.add_argument("--model", type=existing_file, required=True, help="Model file")
    p.add_argument("--seed", type=int, default=None, help="Sampling seed")
    p.set_defaults(handler=certify, command_name="algebraic certify")

    p = commands.add_parser("fiber", parents=[common], help="Fiber type over a base point")
    p.add_argument("--model", type=existing_file, required=True, help="Model file")
    p.add_argument("--point", type=point_arg, required=True, help="Base point, e.g. 1/2,0")
    p.set_defaults(handler=fiber, command_name="algebraic fiber")
