"""
Input loading for subcommands.
"""

from pathlib import Path

from app.core.logging import get_logger
from app.models.algebraic import AlgebraicModel
from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph
from app.services import get_domain_service, get_reeb_service
from app.storage.repositories import parse_spec
from app.utils.exceptions import InputError

logger = get_logger(__name__)


def _unexpected(path: Path, obj: object, wanted: str) -> InputError:
    return InputError(
        f"{path} holds a {type(obj).__name__}, expected {wanted}",
        {"path": str(path)},
    )


def load_domain(path: Path) -> NCDomain:
    """Domain spec, or a band spec expanded by the builder."""
    obj = parse_spec(path)
    if isinstance(obj, BandSpec):
        logger.debug("band_spec_expanded", path=str(path), bands=len(obj.bands))
        return get_domain_service().build_band_domain(obj)
    if isinstance(obj, NCDomain):
        return obj
    raise _unexpected(path, obj, "a domain or band spec")


def load_band(path: Path) -> BandSpec:
    obj = parse_spec(path)
    if not isinstance(obj, BandSpec):
        raise _unexpected(path, obj, "a band spec")
    return obj


def load_graph(path: Path) -> LeveledGraph:
    """Graph file, or the exact Reeb graph of a domain or band spec."""
    obj = parse_spec(path)
    if isinstance(obj, LeveledGraph):
        return obj
    if isinstance(obj, BandSpec):
        obj = get_domain_service().build_band_domain(obj)
    if isinstance(obj, NCDomain):
        return get_reeb_service().reeb_exact(obj)
    raise _unexpected(path, obj, "a graph, domain or band spec")


def load_model(path: Path) -> AlgebraicModel:
    obj = parse_spec(path)
    if not isinstance(obj, AlgebraicModel):
        raise _unexpected(path, obj, "an algebraic model")
    return obj
