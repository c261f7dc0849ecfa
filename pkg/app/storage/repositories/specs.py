"""
Spec repositories.

Handles load/save of domain, band, graph and model documents and kind-based
dispatch for files of unknown kind.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Type

from pydantic import BaseModel

from app.models.algebraic import AlgebraicModel
from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph
from app.schemas.documents import BandDocument, DomainDocument, GraphDocument, ModelDocument
from app.storage.repositories.base import BaseRepository, canonical_json, read_json, write_provenance
from app.utils.exceptions import SpecValidationError


class DomainRepository(BaseRepository[DomainDocument]):
    """Repository for domain specs."""

    def __init__(self):
        """Initialize domain repository."""
        super().__init__(DomainDocument)

    def load(self, path: Path | str) -> NCDomain:
        return super().load(path)


class BandRepository(BaseRepository[BandDocument]):
    """Repository for band specs."""

    def __init__(self):
        """Initialize band repository."""
        super().__init__(BandDocument)

    def load(self, path: Path | str) -> BandSpec:
        return super().load(path)


class GraphRepository(BaseRepository[GraphDocument]):
    """Repository for leveled graphs."""

    def __init__(self):
        """Initialize graph repository."""
        super().__init__(GraphDocument)

    def load(self, path: Path | str) -> LeveledGraph:
        return super().load(path)


class ModelRepository(BaseRepository[ModelDocument]):
    """Repository for emitted algebraic models."""

    def __init__(self):
        """Initialize model repository."""
        super().__init__(ModelDocument)

    def load(self, path: Path | str) -> AlgebraicModel:
        return super().load(path)


class ReportRepository:
    """Writes report documents; reports are outputs only."""

    def dump(self, report: BaseModel) -> str:
        return canonical_json(report)

    def save(self, report: BaseModel, path: Path | str, command: Optional[str] = None) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dump(report), encoding="utf-8")
        write_provenance(path, command)
        return path


REPOSITORIES: Dict[str, Type[BaseRepository]] = {
    "domain": DomainRepository,
    "band": BandRepository,
    "graph": GraphRepository,
    "model": ModelRepository,
}


def repository_for(kind: str) -> BaseRepository:
    """
    Repository of a document kind.

    Raises:
        SpecValidationError: For an unknown kind
    """
    if kind not in REPOSITORIES:
        raise SpecValidationError(
            f"Unknown document kind: {kind!r}",
            [f"kind: expected one of {sorted(REPOSITORIES)}, got {kind!r}"],
        )
    return REPOSITORIES[kind]()


def parse_spec(path: Path | str) -> Any:
    """
    Load any spec file, dispatching on its ``kind`` header.

    Args:
        path: Spec file

    Returns:
        NCDomain | BandSpec | LeveledGraph | AlgebraicModel

    Raises:
        SpecValidationError: For a missing or unknown kind, or listing every
            violation of the document
    """
    path = Path(path)
    data = read_json(path)
    kind = data.get("kind")
    if kind is None:
        raise SpecValidationError(f"{path} declares no kind", ["kind: field required"])
    repository = repository_for(kind)
    document = repository.validate(data, str(path))
    return repository.to_model(document, str(path))


def dump_model(model: Any) -> str:
    """Canonical text of any spec model."""
    for kind, model_type in (
        ("domain", NCDomain),
        ("band", BandSpec),
        ("graph", LeveledGraph),
        ("model", AlgebraicModel),
    ):
        if isinstance(model, model_type):
            return repository_for(kind).dump(model)
    raise TypeError(f"No document kind for {type(model).__name__}")
