"""
Structured logging configuration using structlog.

Logs go to stderr as JSON or console lines; stdout carries command output
only. Exact rationals are rendered as "num/den".
"""

import logging
import sys
from fractions import Fraction
from typing import Any

import numpy as np
import structlog
from structlog.types import EventDict, Processor

from app.core.config import get_settings


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_plain(item) for item in value]
    return value


def normalize_values(logger: logging.Logger, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Make event values JSON friendly.

    Fractions become "num/den" strings and numpy scalars Python numbers,
    inside containers too.
    """
    return {key: _plain(value) for key, value in event_dict.items()}


def add_toolkit_context(logger: logging.Logger, method_name: str, event_dict: EventDict) -> EventDict:
    """Stamp events with the toolkit version; debug runs also get the environment."""
    settings = get_settings()
    event_dict["app_version"] = settings.app_version
    if settings.debug:
        event_dict["environment"] = settings.environment
    return event_dict


def setup_logging() -> None:
    """
    Configure structlog on top of stdlib logging.

    The level and renderer come from settings (``LOG_LEVEL``, ``LOG_FORMAT``).
    Values bound with :func:`bind_command` are merged into every event.
    """
    settings = get_settings()

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, settings.log_level),
    )

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        add_toolkit_context,
        normalize_values,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if settings.log_format == "json":
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def bind_command(command: str) -> None:
    """Attach the running subcommand to every later event of this process."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command)


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    """
    Logger for a module.

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("reeb_graph_computed", vertices=4, edges=4)
    """
    return structlog.get_logger(name)


setup_logging()
