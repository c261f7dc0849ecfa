"""
NC domain entities.

Domains, their neighborhoods, band specifications and transversality reports.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, FrozenSet, List, Optional, Sequence, Tuple

from app.models.polynomial import Polynomial, RationalPoint, make_point
from app.utils.exceptions import DimensionError, InvalidParameterError
from app.utils.rationals import to_fraction


class Membership(str, Enum):
    """Three-way classification of a point against a domain closure."""

    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Ball:
    """
    Open ball, or a cylinder over one, restricting the listed axes.

    ``Σ_{a ∈ axes} (x_a − center_a)² < radius²``; other coordinates are free.
    """

    axes: Tuple[int, ...]
    center: Tuple[Fraction, ...]
    radius: Fraction

    def __post_init__(self) -> None:
        if len(self.axes) != len(self.center):
            raise DimensionError("Ball center must have one coordinate per axis")
        if self.radius <= 0:
            raise InvalidParameterError(f"Ball radius must be positive, got {self.radius}")

    def _slack(self, x: Sequence[Fraction]) -> Fraction:
        distance = sum(((x[a] - c) ** 2 for a, c in zip(self.axes, self.center)), Fraction(0))
        return self.radius**2 - distance

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self._slack(x) > 0

    def closure_contains(self, x: Sequence[Fraction]) -> bool:
        return self._slack(x) >= 0

    def as_polynomial(self, num_vars: int) -> Polynomial:
        """Inside-positive polynomial of the ball."""
        poly = Polynomial.constant(self.radius**2, num_vars)
        for a, c in zip(self.axes, self.center):
            shifted = Polynomial.variable(a, num_vars) - c
            poly = poly - shifted * shifted
        return poly


# Empty tuple of balls is the whole space.
Neighborhood = Tuple[Ball, ...]
WHOLE_SPACE: Neighborhood = ()


@dataclass(frozen=True)
class NCDomain:
    """
    Open set ``{x ∈ U : f_j(x) > 0 for all j}``.

    Attributes:
        ambient_dim: Dimension k of the ambient space
        constraints: Polynomials f_1..f_l in k variables
        neighborhood: Balls whose intersection is U (empty means the whole space)
        provenance: Builder tag, e.g. "band" or "product"
        intended_intersections: Constraint index pairs whose zero sets may meet
    """

    ambient_dim: int
    constraints: Tuple[Polynomial, ...]
    neighborhood: Neighborhood = WHOLE_SPACE
    provenance: Optional[str] = None
    intended_intersections: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.ambient_dim < 2:
            raise InvalidParameterError(f"ambient_dim must be at least 2, got {self.ambient_dim}")
        if not self.constraints:
            raise InvalidParameterError("A domain needs at least one constraint")
        for index, poly in enumerate(self.constraints):
            if poly.num_vars != self.ambient_dim:
                raise DimensionError(
                    f"Constraint {index} has {poly.num_vars} variables, expected {self.ambient_dim}"
                )
        for ball in self.neighborhood:
            if any(not 0 <= a < self.ambient_dim for a in ball.axes):
                raise DimensionError(f"Ball axes {ball.axes} outside the ambient space")
        for i, j in self.intended_intersections:
            if not (0 <= i < j < len(self.constraints)):
                raise InvalidParameterError(f"Intersection pair ({i}, {j}) is not an ordered index pair")

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def is_whole_space(self) -> bool:
        return not self.neighborhood

    def check_point(self, x: Sequence[Any]) -> RationalPoint:
        point = make_point(x)
        if len(point) != self.ambient_dim:
            raise DimensionError(
                f"Point has {len(point)} coordinates, domain lives in dimension {self.ambient_dim}"
            )
        return point

    def in_neighborhood(self, x: Sequence[Fraction]) -> bool:
        return all(ball.contains(x) for ball in self.neighborhood)

    def in_neighborhood_closure(self, x: Sequence[Fraction]) -> bool:
        return all(ball.closure_contains(x) for ball in self.neighborhood)


@dataclass(frozen=True)
class Band:
    """One band ``(t1, t2)`` carrying ``holes`` hole circles."""

    t1: Fraction
    t2: Fraction
    holes: int

    @property
    def radius(self) -> Fraction:
        return (self.t2 - self.t1) / 2

    @property
    def center(self) -> Fraction:
        return (self.t1 + self.t2) / 2


@dataclass(frozen=True)
class BandSpec:
    """
    Parameters of a multi-band domain with circles.

    A large outer circle minus, for each band, ``holes`` disjoint hole disks
    tangent to the lines ``x1 = t1`` and ``x1 = t2``.
    """

    bands: Tuple[Band, ...]
    outer_center: Tuple[Fraction, Fraction]
    outer_radius: Fraction
    stagger: bool = False

    @classmethod
    def create(
        cls,
        bands: Sequence[Tuple[Any, Any, int]],
        outer_center: Sequence[Any] = (0, 0),
        outer_radius: Any = 10,
        stagger: bool = False,
    ) -> "BandSpec":
        """
        Build a spec from plain values and validate it.

        Raises:
            InvalidParameterError: Listing every violated invariant
        """
        center = make_point(outer_center)
        if len(center) != 2:
            raise DimensionError("Outer center must be a planar point")
        spec = cls(
            bands=tuple(Band(to_fraction(t1), to_fraction(t2), int(l0)) for t1, t2, l0 in bands),
            outer_center=(center[0], center[1]),
            outer_radius=to_fraction(outer_radius),
            stagger=stagger,
        )
        problems = spec.violations()
        if problems:
            raise InvalidParameterError("Invalid band spec", {"violations": problems})
        return spec

    def violations(self) -> List[str]:
        """Every violated structural invariant, addressed by field path."""
        problems: List[str] = []
        if not self.bands:
            problems.append("bands: at least one band is required")
        if self.outer_radius <= 0:
            problems.append("outer_radius: must be positive")
        for index, band in enumerate(self.bands):
            if band.t1 >= band.t2:
                problems.append(f"bands[{index}]: t1 must be smaller than t2")
            if band.holes <= 0:
                problems.append(f"bands[{index}]: hole count must be positive")
            if index + 1 < len(self.bands) and band.t2 > self.bands[index + 1].t1:
                problems.append(f"bands[{index + 1}]: must start at or after the end of bands[{index}]")
        return problems

    def levels(self) -> List[Fraction]:
        return sorted({t for band in self.bands for t in (band.t1, band.t2)})


@dataclass(frozen=True)
class SampleCheck:
    """Transversality data at one sample."""

    point: RationalPoint
    active: Tuple[int, ...]
    normals: Tuple[Tuple[Fraction, ...], ...]
    rank: int

    @property
    def passed(self) -> bool:
        return self.rank == len(self.active)


@dataclass(frozen=True)
class TransversalityReport:
    """Sampled transversality verdict for a domain."""

    samples: Tuple[SampleCheck, ...]
    skipped: Tuple[RationalPoint, ...]

    @property
    def passed(self) -> bool:
        return all(sample.passed for sample in self.samples)

    @property
    def failing(self) -> List[int]:
        return [i for i, sample in enumerate(self.samples) if not sample.passed]

    def strata(self) -> List[Tuple[int, ...]]:
        """Distinct active index sets met by the samples."""
        return sorted({sample.active for sample in self.samples})


@dataclass(frozen=True)
class SingularLevel:
    """Critical level of the first-coordinate projection on the boundary."""

    level: Fraction
    points: Tuple[Tuple[RationalPoint, int], ...]


@dataclass(frozen=True)
class SliceReport:
    """Connected components of the closure slice ``x1 = level``."""

    level: Fraction
    count: int
    components: Tuple[Tuple[float, float], ...]
