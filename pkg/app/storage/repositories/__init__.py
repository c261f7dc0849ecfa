"""
Repositories package.

Provides file access for all document kinds.
"""

from app.storage.repositories.base import BaseRepository, canonical_json, write_provenance
from app.storage.repositories.specs import (
    BandRepository,
    DomainRepository,
    GraphRepository,
    ModelRepository,
    ReportRepository,
    dump_model,
    parse_spec,
    repository_for,
)

__all__ = [
    # Base
    "BaseRepository",
    "canonical_json",
    "write_provenance",
    # Specs
    "BandRepository",
    "DomainRepository",
    "GraphRepository",
    "ModelRepository",
    "ReportRepository",
    "dump_model",
    "parse_spec",
    "repository_for",
]
