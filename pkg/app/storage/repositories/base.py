"""
Base repository for JSON documents.

Provides loading and saving of schema documents for all repositories.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Generic, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.core.config import get_settings
from app.core.logging import get_logger
from app.utils.exceptions import InputError, ReebToolkitError, SpecValidationError

logger = get_logger(__name__)

SchemaType = TypeVar("SchemaType", bound=BaseModel)


def format_validation_error(error: ValidationError) -> List[str]:
    """One "field.path: message" entry per pydantic error."""
    problems = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"]) or "<root>"
        problems.append(f"{path}: {item['msg']}")
    return problems


def canonical_json(document: BaseModel) -> str:
    """UTF-8 JSON with 2-space indent and a trailing newline."""
    return document.model_dump_json(indent=2) + "\n"


def read_json(path: Path) -> Dict[str, Any]:
    """
    Read a JSON object from a file.

    Raises:
        InputError: If the file is missing or not a JSON object
    """
    if not path.is_file():
        raise InputError(f"File not found: {path}", {"path": str(path)})
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SpecValidationError(
            f"{path} is not valid JSON", [f"line {e.lineno}, column {e.colno}: {e.msg}"]
        ) from e
    if not isinstance(data, dict):
        raise SpecValidationError(f"{path} must hold a JSON object", ["<root>: expected an object"])
    return data


class BaseRepository(Generic[SchemaType]):
    """
    Base repository with load and save operations.

    Generic repository that can be inherited by specific document repositories.
    Converts between files, pydantic documents and domain models.
    """

    def __init__(self, schema: Type[SchemaType]):
        """
        Initialize repository.

        Args:
            schema: Pydantic document class
        """
        self.schema = schema

    def validate(self, data: Dict[str, Any], source: str = "<data>") -> SchemaType:
        """
        Validate raw data into a document, collecting every violation.

        Args:
            data: Decoded JSON object
            source: Name used in error messages

        Returns:
            Validated document

        Raises:
            SpecValidationError: Listing all structural and invariant violations
        """
        try:
            document = self.schema.model_validate(data)
        except ValidationError as e:
            raise SpecValidationError(
                f"{source} does not match the {self.schema.__name__} schema",
                format_validation_error(e),
            ) from e
        problems = document.violations() if hasattr(document, "violations") else []
        if problems:
            raise SpecValidationError(f"{source} violates {len(problems)} invariant(s)", problems)
        return document

    def to_model(self, document: SchemaType, source: str = "<data>") -> Any:
        """
        Convert a document into its domain model.

        Raises:
            SpecValidationError: If the model rejects the document
        """
        try:
            return document.to_model()
        except ReebToolkitError as e:
            problems = e.details.get("violations") or [e.message]
            raise SpecValidationError(f"{source} is not a valid {self.schema.__name__}", problems) from e

    def load(self, path: Path | str) -> Any:
        """
        Load a file into its domain model.

        Args:
            path: Document path

        Returns:
            Domain model instance
        """
        path = Path(path)
        document = self.validate(read_json(path), str(path))
        logger.debug("document_loaded", path=str(path), schema=self.schema.__name__)
        return self.to_model(document, str(path))

    def dump(self, model: Any) -> str:
        """Canonical text of a domain model."""
        return canonical_json(self.schema.from_model(model))

    def save(self, model: Any, path: Path | str, command: Optional[str] = None) -> Path:
        """
        Save a domain model and its provenance sidecar.

        Args:
            model: Domain model instance
            path: Target path
            command: Command line recorded in the sidecar

        Returns:
            Path of the written document
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dump(model), encoding="utf-8")
        write_provenance(path, command)
        logger.info("document_saved", path=str(path), schema=self.schema.__name__)
        return path


def write_provenance(path: Path, command: Optional[str] = None) -> Path:
    """Write ``<path>.provenance.json`` next to an output."""
    settings = get_settings()
    sidecar = path.with_name(path.name + ".provenance.json")
    payload = {
        "version": settings.app_version,
        "command": command,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    sidecar.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return sidecar
