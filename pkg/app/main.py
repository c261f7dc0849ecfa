"""
Command line entry point.

Exit codes: 0 success, 1 negative verdict of a decision command, 2 invalid
input, 3 size cap or search budget exceeded, 4 unexpected internal error.
"""

import json
import sys
from typing import List, Optional

from app.cli import build_parser, emit
from app.core.config import get_settings
from app.core.logging import bind_command, get_logger, setup_logging
from app.schemas import ErrorResponse
from app.utils.exceptions import CapacityError, ReebToolkitError, SpecValidationError

logger = get_logger(__name__)

EXIT_INTERNAL = 4


def _report_error(error: str, message: str, details: Optional[dict] = None) -> None:
    """Print an error document on stderr."""
    details = json.loads(json.dumps(details or {}, default=str))
    response = ErrorResponse(error=error, message=message, details=details)
    sys.stderr.write(response.model_dump_json(indent=2) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and map its outcome to an exit code.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` by default

    Returns:
        int: Process exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    setup_logging()
    settings = get_settings()

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(e.code or 0)

    bind_command(args.command_name)
    logger.info("command_started", argv=argv)

    # === Exception Handlers ===

    try:
        outcome = args.handler(args)
        return emit(outcome, args, argv)
    except SpecValidationError as e:
        logger.warning("validation_error", violations=e.violations)
        _report_error("SpecValidationError", e.message, e.details)
        return e.exit_code
    except CapacityError as e:
        logger.warning("capacity_exceeded", error=e.message)
        _report_error("CapacityError", e.message, e.details)
        return e.exit_code
    except ReebToolkitError as e:
        logger.warning(
            "input_error",
            error=e.message,
            error_type=type(e).__name__,
        )
        _report_error(type(e).__name__, e.message, e.details)
        return e.exit_code
    except Exception as e:
        logger.error(
            "unexpected_error",
            error=str(e),
            error_type=type(e).__name__,
            exc_info=settings.debug,
        )
        _report_error("InternalError", "An unexpected error occurred", {"type": type(e).__name__})
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
