"""
Command line package.

Builds the argument parser from the command modules.
"""

import argparse

from app.cli.arguments import common_options
from app.cli.commands import COMMAND_MODULES
from app.cli.output import Outcome, emit, render
from app.core.config import get_settings


def build_parser() -> argparse.ArgumentParser:
    """
    Top-level parser with one sub-parser per command group.

    Returns:
        argparse.ArgumentParser: Parser whose leaf commands set ``handler``
    """
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="reeb-toolkit",
        description="Reeb graphs of normal convenient domains and their algebraic models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = common_options()
    for module in COMMAND_MODULES:
        module.register(subparsers, common)
    return parser


__all__ = ["Outcome", "build_parser", "emit", "render"]
