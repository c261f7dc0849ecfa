"""
Argument types and shared options of the command line.
"""

import argparse
from fractions import Fraction
from pathlib import Path
from typing import Tuple

from app.utils.exceptions import InputError
from app.utils.rationals import parse_rational


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def rational_arg(text: str) -> Fraction:
    """Rational such as ``3``, ``-1/2`` or ``0.25``."""
    try:
        return parse_rational(text)
    except (InputError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def point_arg(text: str) -> Tuple[Fraction, ...]:
    """Comma separated rational coordinates, e.g. ``1/2,0``."""
    return tuple(rational_arg(part.strip()) for part in text.split(","))


def existing_file(text: str) -> Path:
    path = Path(text)
    if not path.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {text}")
    return path


def common_options(default_format: str = "structured") -> argparse.ArgumentParser:
    """
    Parent parser holding the flags every subcommand accepts.

    Subcommands sharing one parent share its actions, so a command with a
    different default format needs a parent of its own.

    Returns:
        argparse.ArgumentParser: Parser created with ``add_help=False``
    """
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("output and limits")
    group.add_argument(
        "--format",
        choices=("text", "structured", "dot"),
        default=default_format,
        help=f"Output format (default: {default_format})",
    )
    group.add_argument("--out", type=Path, default=None, help="Write output here instead of stdout")
    group.add_argument(
        "--resolution", type=positive_int, default=None, help="Grid cells per axis for the oracle"
    )
    group.add_argument(
        "--tolerance", type=positive_float, default=None, help="Numerical tolerance override"
    )
    group.add_argument("--cap", type=positive_int, default=None, help="Size cap override")
    return parser
