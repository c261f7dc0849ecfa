"""
Polynomial models of domain closures as images of smooth maps.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from app.models.domain import NCDomain
from app.models.polynomial import Polynomial, RationalPoint


class DimensionPolicy(str, Enum):
    BALANCED = "balanced"
    FRONT_LOADED = "front-loaded"


@dataclass(frozen=True)
class AlgebraicModel:
    """
    System ``F_i = f_i(x) − |y_i|²`` in ``m + l`` variables.

    Variables are laid out as ``x_1..x_k`` followed by the y blocks in
    constraint order; block i has ``dims[i]`` coordinates.
    """

    domain: NCDomain
    m: int
    dims: Tuple[int, ...]
    system: Tuple[Polynomial, ...]
    policy: DimensionPolicy

    @property
    def k(self) -> int:
        return self.domain.ambient_dim

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.dims)

    @property
    def num_vars(self) -> int:
        return self.m + self.l

    def block(self, index: int) -> range:
        """Variable indices of the y block of constraint ``index``."""
        start = self.k + sum(self.dims[:index])
        return range(start, start + self.dims[index])

    def layout(self) -> List[Tuple[str, int, int]]:
        """(name, first index, size) rows of the variable layout."""
        rows = [("x", 0, self.k)]
        for i in range(self.l):
            block = self.block(i)
            rows.append((f"y{i + 1}", block.start, len(block)))
        return rows


@dataclass(frozen=True, eq=False)
class FiberSample:
    """Point of the variety above ``x``; ``exact`` is set when every radius is rational."""

    point: np.ndarray
    exact: Optional[RationalPoint] = None


class FiberKind(str, Enum):
    SPHERES = "spheres"
    POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class SphereFactor:
    """Factor of a fiber: ``S^(dimension)`` of squared radius ``radius_squared``."""

    block: int
    dimension: int
    radius_squared: Fraction

    @property
    def radius(self) -> float:
        return float(self.radius_squared) ** 0.5

    @property
    def degenerate(self) -> bool:
        return self.radius_squared == 0


@dataclass(frozen=True)
class FiberType:
    kind: FiberKind
    factors: Tuple[SphereFactor, ...] = ()

    @property
    def dimension(self) -> int:
        """Manifold dimension of the fiber; -1 when empty."""
        if self.kind is FiberKind.EMPTY:
            return -1
        return sum(f.dimension for f in self.factors if not f.degenerate)


@dataclass
class CertificateReport:
    """Sampled rank, fiber dimension and emptiness certificates of a model."""

    expected_rank: int
    expected_fiber_dimension: int
    strict_boundary_drop: bool = True
    interior_ranks: List[int] = field(default_factory=list)
    boundary_ranks: List[int] = field(default_factory=list)
    interior_fiber_dimensions: List[int] = field(default_factory=list)
    boundary_fiber_dimensions: List[int] = field(default_factory=list)
    outside_empty: List[bool] = field(default_factory=list)

    @property
    def rank_ok(self) -> bool:
        ranks = self.interior_ranks + self.boundary_ranks
        return bool(ranks) and all(r == self.expected_rank for r in ranks)

    @property
    def fiber_dimension_ok(self) -> bool:
        interior = all(d == self.expected_fiber_dimension for d in self.interior_fiber_dimensions)
        if self.strict_boundary_drop:
            boundary = all(d < self.expected_fiber_dimension for d in self.boundary_fiber_dimensions)
        else:
            # a one-dimensional block degenerates from S^0 to a point without losing dimension
            boundary = all(d <= self.expected_fiber_dimension for d in self.boundary_fiber_dimensions)
        return interior and boundary

    @property
    def emptiness_ok(self) -> bool:
        return all(self.outside_empty)

    @property
    def passed(self) -> bool:
        return self.rank_ok and self.fiber_dimension_ok and self.emptiness_ok
