"""
Domain service for building and inspecting NC domains.

Handles band domain construction, product lifts, membership, transversality
sampling and the closed-form critical levels of circle arrangements.
"""

import math
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.domain import (
    Ball,
    BandSpec,
    Membership,
    NCDomain,
    SampleCheck,
    SingularLevel,
    TransversalityReport,
    WHOLE_SPACE,
)
from app.models.polynomial import CircleShape, Orientation, Polynomial, RationalPoint, sphere_poly
from app.utils.exceptions import DimensionError, DomainBuildError, UnsupportedDomainError

logger = get_logger(__name__)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix, computed exactly by sympy."""
    if not rows:
        return 0
    matrix = sp.Matrix([[sp.Rational(str(Fraction(c))) for c in row] for row in rows])
    return int(matrix.rank())


def hole_offsets(count: int, radius: Fraction, shifted: bool = False) -> List[Fraction]:
    """
    Vertical offsets of the holes of one band.

    Odd counts start at 0, even counts at -3r; further holes alternate
    below and above in steps of 3r. ``shifted`` moves every offset up by 3r/2.
    """
    step = 3 * radius
    if count % 2:
        offsets = [Fraction(0)]
        multiples = range(1, count // 2 + 1)
    else:
        offsets = []
        multiples = range(1, count // 2 + 1)
    for n in multiples:
        offsets.extend([-n * step, n * step])
    offsets = offsets[:count]
    if shifted:
        offsets = [o + step / 2 for o in offsets]
    return offsets


class CircleArrangement:
    """Planar domain made of one outer circle and disjoint hole circles."""

    def __init__(self, outer: CircleShape, holes: List[Tuple[int, CircleShape]]):
        self.outer = outer
        self.holes = holes

    @property
    def range(self) -> Tuple[Fraction, Fraction]:
        return self.outer.extremes()


class DomainService:
    """Service for NC domain construction and checks."""

    def __init__(self):
        """Initialize domain service."""
        self.settings = get_settings()

    # === Builders ===

    def build_band_domain(self, spec: BandSpec) -> NCDomain:
        """
        Expand a band spec into a planar domain with circles.

        Args:
            spec: Validated band spec

        Returns:
            NCDomain: Outer circle followed by the holes of every band

        Raises:
            DomainBuildError: If the outer circle is too small or holes do not fit
        """
        problems = spec.violations()
        if problems:
            raise DomainBuildError("Invalid band spec", {"violations": problems})

        ox, oy = spec.outer_center
        radius = spec.outer_radius
        reach = max(abs(t - ox) for t in spec.levels())
        if radius < 3 * reach:
            raise DomainBuildError(
                f"Outer radius {radius} is below the floor 3 * {reach}",
                {"outer_radius": str(radius), "floor": str(3 * reach)},
            )

        constraints = [sphere_poly((ox, oy), radius, 2, Orientation.INSIDE_POSITIVE)]
        holes: List[Tuple[Fraction, Fraction, Fraction]] = []
        for index, band in enumerate(spec.bands):
            r = band.radius
            shifted = spec.stagger and index % 2 == 1
            for offset in hole_offsets(band.holes, r, shifted):
                cx, cy = band.center, oy + offset
                distance_squared = (cx - ox) ** 2 + (cy - oy) ** 2
                if radius - 2 * r < 0 or distance_squared > (radius - 2 * r) ** 2:
                    raise DomainBuildError(
                        f"Hole of band {index} at ({cx}, {cy}) does not fit inside the outer circle",
                        {"band": index, "center": [str(cx), str(cy)]},
                    )
                holes.append((cx, cy, r))
                constraints.append(sphere_poly((cx, cy), r, 2, Orientation.OUTSIDE_POSITIVE))

        intended = set()
        for (a, (ax, ay, ar)), (b, (bx, by, br)) in combinations(enumerate(holes), 2):
            distance_squared = (ax - bx) ** 2 + (ay - by) ** 2
            if distance_squared < (ar + br) ** 2:
                raise DomainBuildError(
                    f"Holes {a} and {b} overlap", {"holes": [a, b]}
                )
            if distance_squared == (ar + br) ** 2:
                intended.add((a + 1, b + 1))

        domain = NCDomain(
            ambient_dim=2,
            constraints=tuple(constraints),
            neighborhood=WHOLE_SPACE,
            provenance="band",
            intended_intersections=frozenset(intended),
        )
        logger.info(
            "band_domain_built",
            bands=len(spec.bands),
            holes=len(holes),
            contacts=sorted(intended),
        )
        return domain

    def lift_product(self, first: NCDomain, second: NCDomain) -> NCDomain:
        """
        Intersect the cylinders over two domains sharing the first coordinate.

        Args:
            first: Domain in R^k
            second: Planar domain; its second coordinate becomes coordinate k+1

        Returns:
            NCDomain: Domain in R^(k+1)

        Raises:
            DimensionError: If the second domain is not planar
        """
        if second.ambient_dim != 2:
            raise DimensionError(
                f"Second factor must be planar, got dimension {second.ambient_dim}"
            )
        k = first.ambient_dim
        first_map = {i: i for i in range(k)}
        second_map = {0: 0, 1: k}
        constraints = [p.substitute(first_map, k + 1) for p in first.constraints]
        constraints += [p.substitute(second_map, k + 1) for p in second.constraints]
        neighborhood = list(first.neighborhood)
        neighborhood += [
            Ball(tuple(second_map[a] for a in ball.axes), ball.center, ball.radius)
            for ball in second.neighborhood
        ]
        l1 = first.num_constraints
        intended = set(first.intended_intersections)
        intended |= {(i + l1, j + l1) for i, j in second.intended_intersections}
        intended |= {(i, l1 + j) for i in range(l1) for j in range(second.num_constraints)}
        domain = NCDomain(
            ambient_dim=k + 1,
            constraints=tuple(constraints),
            neighborhood=tuple(neighborhood),
            provenance="product",
            intended_intersections=frozenset(intended),
        )
        logger.info("product_domain_lifted", ambient_dim=k + 1, constraints=len(constraints))
        return domain

    # === Membership ===

    def closure_membership(self, domain: NCDomain, x: Sequence[Any]) -> Membership:
        """
        Classify a point as interior, boundary or outside.

        Raises:
            DimensionError: On coordinate count mismatch
        """
        point = domain.check_point(x)
        values = [f.evaluate(point) for f in domain.constraints]
        if all(v > 0 for v in values) and domain.in_neighborhood(point):
            return Membership.INTERIOR
        if (
            all(v >= 0 for v in values)
            and any(v == 0 for v in values)
            and domain.in_neighborhood_closure(point)
        ):
            return Membership.BOUNDARY
        return Membership.OUTSIDE

    # === Transversality ===

    def check_transversality(
        self,
        domain: NCDomain,
        samples: Optional[Sequence[Sequence[Any]]] = None,
        per_constraint: Optional[int] = None,
        tolerance: Fraction | float = 0,
    ) -> TransversalityReport:
        """
        Check that active constraint gradients are independent at samples.

        Args:
            domain: Domain to check
            samples: Explicit sample points; generated when omitted
            per_constraint: Samples per constraint in generated mode
            tolerance: Relative tolerance deciding which constraints are active

        Returns:
            TransversalityReport: Per-sample ranks and the overall verdict
        """
        tolerance = Fraction(tolerance)
        if samples is None:
            points = self.transversality_samples(domain, per_constraint)
            if tolerance == 0:
                tolerance = Fraction(1, 10**9)
        else:
            points = [domain.check_point(x) for x in samples]

        checks: List[SampleCheck] = []
        skipped: List[RationalPoint] = []
        for point in points:
            active = tuple(
                j for j, f in enumerate(domain.constraints) if self._is_active(f, point, tolerance)
            )
            if not active:
                logger.warning("transversality_sample_skipped", point=list(point))
                skipped.append(point)
                continue
            normals = tuple(domain.constraints[j].gradient(point) for j in active)
            checks.append(SampleCheck(point, active, normals, exact_rank(normals)))

        report = TransversalityReport(tuple(checks), tuple(skipped))
        logger.info(
            "transversality_checked",
            samples=len(checks),
            skipped=len(skipped),
            passed=report.passed,
            strata=report.strata(),
        )
        return report

    @staticmethod
    def _is_active(f: Polynomial, point: RationalPoint, tolerance: Fraction) -> bool:
        value = f.evaluate(point)
        if tolerance == 0:
            return value == 0
        scale = sum(
            (abs(c) * abs(math.prod(float(x) ** e for x, e in zip(point, exps))) for exps, c in f.terms.items()),
            0.0,
        )
        return abs(float(value)) <= float(tolerance) * max(1.0, scale)

    def transversality_samples(
        self, domain: NCDomain, per_constraint: Optional[int] = None
    ) -> List[RationalPoint]:
        """
        Points on single constraints plus points on pairwise intersections.

        Pairwise points cover tangent circles of planar arrangements and
        crossings of cylinders that share only the first axis.
        """
        per_constraint = per_constraint or self.settings.transversality_samples_per_constraint
        points = self.boundary_samples(domain, per_constraint, only_closure=False)
        circles = self._circles(domain)
        free = self._free_values(domain)
        for (i, a), (j, b) in combinations(circles, 2):
            if a.radius is None or b.radius is None:
                continue
            if a.axes == b.axes:
                contact = self._contact_point(a, b)
                if contact is not None:
                    points.append(self._embed(domain, a.axes, contact, free))
            elif a.axes[0] == b.axes[0] == 0 and a.axes[1] != b.axes[1]:
                points.extend(self._cylinder_crossings(domain, a, b, per_constraint, free))
        return points

    @staticmethod
    def _contact_point(a: CircleShape, b: CircleShape) -> Optional[Tuple[Fraction, Fraction]]:
        dx, dy = b.center[0] - a.center[0], b.center[1] - a.center[1]
        if dx * dx + dy * dy != (a.radius + b.radius) ** 2:
            return None
        t = a.radius / (a.radius + b.radius)
        return a.center[0] + t * dx, a.center[1] + t * dy

    def _cylinder_crossings(
        self,
        domain: NCDomain,
        a: CircleShape,
        b: CircleShape,
        count: int,
        free: List[Fraction],
    ) -> List[RationalPoint]:
        lo = max(a.extremes()[0], b.extremes()[0])
        hi = min(a.extremes()[1], b.extremes()[1])
        if lo >= hi:
            return []
        points = []
        for n in range(1, count + 1):
            x0 = lo + (hi - lo) * Fraction(n, count + 1)
            coords = list(free)
            coords[0] = x0
            for shape, sign in ((a, 1), (b, -1)):
                height = float(shape.radius_squared - (x0 - shape.center[0]) ** 2) ** 0.5
                coords[shape.axes[1]] = shape.center[1] + sign * Fraction(height)
            points.append(tuple(coords))
        return points

    # === Circle arrangements ===

    def _circles(self, domain: NCDomain) -> List[Tuple[int, CircleShape]]:
        circles = []
        for index, f in enumerate(domain.constraints):
            shape = f.as_circle()
            if shape is not None:
                circles.append((index, shape))
        return circles

    def planar_circles(self, domain: NCDomain) -> List[Tuple[int, CircleShape]]:
        """
        Circle shapes of every constraint of a planar circle domain.

        Raises:
            UnsupportedDomainError: If a constraint is not a circle with rational radius
        """
        if domain.ambient_dim != 2:
            raise UnsupportedDomainError(
                "Closed-form routines need a planar domain; use the grid oracle instead",
                {"ambient_dim": domain.ambient_dim},
            )
        circles = []
        for index, f in enumerate(domain.constraints):
            shape = f.as_circle()
            if shape is None or shape.radius is None:
                raise UnsupportedDomainError(
                    f"Constraint {index} is not a circle with rational radius; use the grid oracle instead",
                    {"constraint": index},
                )
            circles.append((index, shape))
        return circles

    def circle_arrangement(self, domain: NCDomain) -> CircleArrangement:
        """
        Validate the outer-circle-with-holes shape required by the exact sweep.

        Holes must lie inside the open outer disk and be pairwise disjoint,
        except for tangency at a common first-coordinate extreme.

        Raises:
            UnsupportedDomainError: If the domain does not have this shape
        """
        circles = self.planar_circles(domain)
        if not domain.is_whole_space:
            raise UnsupportedDomainError("Exact sweep needs the whole plane as neighborhood")
        outers = [(i, c) for i, c in circles if c.inside_positive]
        holes = [(i, c) for i, c in circles if not c.inside_positive]
        if len(outers) != 1:
            raise UnsupportedDomainError(
                f"Expected exactly one inside-positive circle, found {len(outers)}"
            )
        outer = outers[0][1]
        for index, hole in holes:
            gap = outer.radius - hole.radius
            distance_squared = sum((h - o) ** 2 for h, o in zip(hole.center, outer.center))
            if gap <= 0 or distance_squared >= gap**2:
                raise UnsupportedDomainError(
                    f"Hole {index} is not inside the open outer disk", {"constraint": index}
                )
        for (i, a), (j, b) in combinations(holes, 2):
            dx, dy = a.center[0] - b.center[0], a.center[1] - b.center[1]
            distance_squared = dx * dx + dy * dy
            reach = (a.radius + b.radius) ** 2
            if distance_squared > reach:
                continue
            if distance_squared == reach and dy == 0:
                continue
            raise UnsupportedDomainError(
                f"Holes {i} and {j} intersect away from a vertical tangency",
                {"constraints": [i, j]},
            )
        return CircleArrangement(outer, holes)

    def singular_levels(self, domain: NCDomain) -> List[SingularLevel]:
        """
        First-coordinate extremes of every constraint circle, grouped by level.

        Raises:
            UnsupportedDomainError: If a constraint is not a circle
        """
        grouped: Dict[Fraction, List[Tuple[RationalPoint, int]]] = {}
        for index, shape in self.planar_circles(domain):
            for level in shape.extremes():
                grouped.setdefault(level, []).append(((level, shape.center[1]), index))
        return [SingularLevel(level, tuple(grouped[level])) for level in sorted(grouped)]

    def candidate_levels(self, domain: NCDomain) -> List[Fraction]:
        """Exact first-coordinate extremes of every circle or cylinder constraint."""
        levels = set()
        for _, shape in self._circles(domain):
            if shape.axes[0] == 0 and shape.radius is not None:
                levels.update(shape.extremes())
        return sorted(levels)

    # === Sampling ===

    def default_box(self, domain: NCDomain) -> List[Tuple[float, float]]:
        """
        Axis-aligned box containing the closure, with a margin of 1/40 of each side.

        Raises:
            UnsupportedDomainError: If some axis is not bounded by an inside-positive circle or ball
        """
        bounds: List[Optional[Tuple[float, float]]] = [None] * domain.ambient_dim

        def _restrict(axis: int, lo: float, hi: float) -> None:
            current = bounds[axis]
            bounds[axis] = (lo, hi) if current is None else (max(current[0], lo), min(current[1], hi))

        for _, shape in self._circles(domain):
            if not shape.inside_positive:
                continue
            r = math.sqrt(float(shape.radius_squared))
            for axis, c in zip(shape.axes, shape.center):
                _restrict(axis, float(c) - r, float(c) + r)
        for ball in domain.neighborhood:
            for axis, c in zip(ball.axes, ball.center):
                _restrict(axis, float(c - ball.radius), float(c + ball.radius))

        box = []
        for axis, bound in enumerate(bounds):
            if bound is None or bound[0] >= bound[1]:
                raise UnsupportedDomainError(
                    f"Axis {axis} is not bounded by a recognised constraint; pass a box",
                    {"axis": axis},
                )
            margin = (bound[1] - bound[0]) / 40
            box.append((bound[0] - margin, bound[1] + margin))
        return box

    def _free_values(self, domain: NCDomain) -> List[Fraction]:
        try:
            box = self.default_box(domain)
        except UnsupportedDomainError:
            return [Fraction(0)] * domain.ambient_dim
        return [Fraction((lo + hi) / 2).limit_denominator(1000) for lo, hi in box]

    @staticmethod
    def _embed(
        domain: NCDomain,
        axes: Tuple[int, int],
        planar: Tuple[Fraction, Fraction],
        free: List[Fraction],
    ) -> RationalPoint:
        coords = list(free)
        coords[axes[0]], coords[axes[1]] = planar
        return tuple(coords)

    def boundary_samples(
        self,
        domain: NCDomain,
        per_constraint: int,
        only_closure: bool = True,
    ) -> List[RationalPoint]:
        """
        Rational points on the constraint circles.

        Uses the rational parametrisation ``((1-s²)/(1+s²), 2s/(1+s²))`` with
        parameters spread over the circle; coordinates outside the circle's
        axes are fixed at the middle of the default box.

        Args:
            domain: Domain whose circles are sampled
            per_constraint: Points per circle
            only_closure: Keep only points classified as boundary of the closure

        Returns:
            List[RationalPoint]: Sample points in constraint order
        """
        free = self._free_values(domain)
        points: List[RationalPoint] = []
        for _, shape in self._circles(domain):
            if shape.radius is None:
                continue
            for n in range(per_constraint):
                theta = -math.pi + 2 * math.pi * (n + 0.5) / per_constraint
                s = Fraction(math.tan(theta / 2)).limit_denominator(1000)
                denom = 1 + s * s
                planar = (
                    shape.center[0] + shape.radius * (1 - s * s) / denom,
                    shape.center[1] + shape.radius * 2 * s / denom,
                )
                point = self._embed(domain, shape.axes, planar, free)
                if only_closure and self.closure_membership(domain, point) is not Membership.BOUNDARY:
                    continue
                points.append(point)
        return points

    def interior_samples(self, domain: NCDomain, count: int, seed: Optional[int] = None) -> List[RationalPoint]:
        """
        Pseudo-random rational interior points by rejection in the default box.

        Raises:
            DomainBuildError: If too few interior points are found
        """
        rng = np.random.default_rng(self.settings.random_seed if seed is None else seed)
        box = self.default_box(domain)
        points: List[RationalPoint] = []
        attempts = 0
        while len(points) < count:
            attempts += 1
            if attempts > 200 * count:
                raise DomainBuildError(
                    f"Found only {len(points)} interior samples after {attempts} attempts"
                )
            point = tuple(
                Fraction(round(rng.uniform(lo, hi) * 1000), 1000) for lo, hi in box
            )
            if self.closure_membership(domain, point) is Membership.INTERIOR:
                points.append(point)
        return points

    def outside_samples(self, domain: NCDomain, count: int) -> List[RationalPoint]:
        """
        Points just outside the closure, pushed off boundary samples against a gradient.

        ``x − δ ∇f_j(x)`` makes an active quadratic constraint negative for small δ.
        """
        per_constraint = max(1, -(-count // domain.num_constraints))
        points: List[RationalPoint] = []
        for point in self.boundary_samples(domain, per_constraint):
            for f in domain.constraints:
                if f.evaluate(point) != 0:
                    continue
                grad = f.gradient(point)
                scale = max(abs(g) for g in grad)
                if scale == 0:
                    continue
                delta = Fraction(1, 64) / max(Fraction(1), scale)
                pushed = tuple(x - delta * g for x, g in zip(point, grad))
                if self.closure_membership(domain, pushed) is Membership.OUTSIDE:
                    points.append(pushed)
                break
            if len(points) >= count:
                break
        return points


# Singleton instance
_domain_service: DomainService | None = None


def get_domain_service() -> DomainService:
    """
    Get domain service instance (singleton).

    Returns:
        DomainService: Domain service instance
    """
    global _domain_service
    if _domain_service is None:
        _domain_service = DomainService()
    return _domain_service


# Convenience exports
build_band_domain = lambda spec: get_domain_service().build_band_domain(spec)  # noqa: E731
lift_product = lambda first, second: get_domain_service().lift_product(first, second)  # noqa: E731
closure_membership = lambda domain, x: get_domain_service().closure_membership(domain, x)  # noqa: E731
check_transversality = lambda domain, samples=None, **kw: get_domain_service().check_transversality(  # noqa: E731
    domain, samples, **kw
)
singular_levels = lambda domain: get_domain_service().singular_levels(domain)  # noqa: E731
