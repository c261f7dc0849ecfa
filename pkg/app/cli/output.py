"""
Command outcomes and their rendering.
"""

import argparse
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from app.core.logging import get_logger
from app.models.graph import LeveledGraph
from app.models.planarity import KuratowskiWitness
from app.services.export_service import get_export_service
from app.storage.repositories import ReportRepository, canonical_json, dump_model, write_provenance
from app.utils.exceptions import InputError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1


@dataclass
class Outcome:
    """
    Result of one subcommand.

    ``verdict`` is set by decision subcommands; False maps to exit code 1.
    ``artifacts`` are spec models written next to ``--out`` as
    ``<stem>.<name>.json``.
    """

    document: BaseModel
    summary: str
    verdict: Optional[bool] = None
    graph: Optional[LeveledGraph] = None
    witness: Optional[KuratowskiWitness] = None
    artifacts: Dict[str, Any] = field(default_factory=dict)
    name: str = "reeb"

    @property
    def exit_code(self) -> int:
        return EXIT_NEGATIVE if self.verdict is False else EXIT_OK


def render(outcome: Outcome, fmt: str) -> str:
    """
    Text of an outcome in the requested format.

    Raises:
        InputError: If DOT is requested for an outcome without a graph
    """
    if fmt == "text":
        return outcome.summary.rstrip("\n") + "\n"
    if fmt == "dot":
        if outcome.graph is None:
            raise InputError("This command has no graph to render as DOT")
        return get_export_service().to_dot(outcome.graph, outcome.witness, outcome.name)
    return canonical_json(outcome.document)


def emit(outcome: Outcome, args: argparse.Namespace, argv: List[str]) -> int:
    """Write an outcome to ``--out`` (with provenance) or stdout; return the exit code."""
    fmt = args.format
    out: Optional[Path] = args.out
    command = shlex.join(["reeb-toolkit", *argv])
    if out is None:
        sys.stdout.write(render(outcome, fmt))
    elif fmt == "structured":
        ReportRepository().save(outcome.document, out, command)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(render(outcome, fmt), encoding="utf-8")
        write_provenance(out, command)

    if out is not None:
        for name, model in sorted(outcome.artifacts.items()):
            path = out.with_name(f"{out.stem}.{name}.json")
            path.write_text(dump_model(model), encoding="utf-8")
            write_provenance(path, command)
            logger.debug("artifact_written", path=str(path), name=name)

    logger.info("command_completed", exit_code=outcome.exit_code)
    return outcome.exit_code
