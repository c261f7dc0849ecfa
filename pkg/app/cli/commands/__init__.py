"""
Command modules package.

Each module registers one command group on the top-level parser.
"""

from app.cli.commands import algebraic, conditions, domain, export, family, graph, planarity, reeb

COMMAND_MODULES = [domain, reeb, graph, conditions, family, planarity, algebraic, export]

__all__ = ["COMMAND_MODULES"]
