"""
Pytest configuration and fixtures.

Provides the domain and graph fixtures shared by the test modules.
"""

import os
from itertools import combinations
from pathlib import Path
from typing import Any, Callable

import pytest

from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph
from app.models.polynomial import Orientation, sphere_poly
from app.services import get_domain_service, get_reeb_service
from app.storage.repositories import dump_model


@pytest.fixture(scope="session", autouse=True)
def setup_test_env():
    """
    Set up test environment variables.

    Runs once per test session.
    """
    os.environ.setdefault("ENVIRONMENT", "testing")
    os.environ.setdefault("LOG_LEVEL", "WARNING")
    os.environ.setdefault("LOG_FORMAT", "text")

    yield


# === Band specs ===


@pytest.fixture
def theta_spec() -> BandSpec:
    """One hole over (-1, 1) in the disk of radius 10 about the origin."""
    return BandSpec.create([(-1, 1, 1)], (0, 0), 10)


@pytest.fixture
def two_band_spec() -> BandSpec:
    """Two single-hole bands touching at x1 = 2."""
    return BandSpec.create([(0, 2, 1), (2, 4, 1)], (2, 0), 20)


@pytest.fixture
def offset_theta_spec() -> BandSpec:
    """Theta base with levels -9, 0, 2, 11."""
    return BandSpec.create([(0, 2, 1)], (1, 0), 10)


@pytest.fixture
def double_holes_spec() -> BandSpec:
    """Two double-hole bands; three points at x1 = 1 and at x1 = 5."""
    return BandSpec.create([(0, 2, 2), (4, 6, 2)], (3, 0), 12)


@pytest.fixture
def mixed_holes_spec() -> BandSpec:
    """Two points at x1 = 1 and three at x1 = 5."""
    return BandSpec.create([(0, 2, 1), (4, 6, 2)], (3, 0), 12)


# === Domains ===


@pytest.fixture
def theta_domain(theta_spec) -> NCDomain:
    return get_domain_service().build_band_domain(theta_spec)


@pytest.fixture
def two_band_domain(two_band_spec) -> NCDomain:
    return get_domain_service().build_band_domain(two_band_spec)


@pytest.fixture
def offset_theta_domain(offset_theta_spec) -> NCDomain:
    return get_domain_service().build_band_domain(offset_theta_spec)


@pytest.fixture
def double_holes_domain(double_holes_spec) -> NCDomain:
    return get_domain_service().build_band_domain(double_holes_spec)


@pytest.fixture
def mixed_holes_domain(mixed_holes_spec) -> NCDomain:
    return get_domain_service().build_band_domain(mixed_holes_spec)


@pytest.fixture
def disk_domain() -> NCDomain:
    """Open unit disk."""
    return NCDomain(2, (sphere_poly((0, 0), 1, 2, Orientation.INSIDE_POSITIVE),))


# === Graphs ===


@pytest.fixture
def theta_graph(theta_domain) -> LeveledGraph:
    return get_reeb_service().reeb_exact(theta_domain)


@pytest.fixture
def offset_theta_graph(offset_theta_domain) -> LeveledGraph:
    return get_reeb_service().reeb_exact(offset_theta_domain)


@pytest.fixture
def k5_graph() -> LeveledGraph:
    """Complete graph on five vertices at levels 0..4."""
    return LeveledGraph.from_lists(
        [(v, v) for v in range(5)],
        [(u, w) for u, w in combinations(range(5), 2)],
    )


@pytest.fixture
def k33_graph() -> LeveledGraph:
    """K3,3 with one side at levels 0..2 and the other at 3..5."""
    return LeveledGraph.from_lists(
        [(v, v) for v in range(6)],
        [(u, w) for u in range(3) for w in range(3, 6)],
    )


# === Files ===


@pytest.fixture
def write_spec(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a spec model to ``tmp_path / name`` in canonical form."""

    def _write(name: str, model: Any) -> Path:
        path = tmp_path / name
        path.write_text(dump_model(model), encoding="utf-8")
        return path

    return _write
