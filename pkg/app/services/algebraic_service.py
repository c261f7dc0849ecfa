"""
Algebraic service.

Emits the sphere-bundle system ``F_i = f_i(x) − |y_i|²`` whose projection to
the x coordinates has the domain closure as image, and certifies it on
samples: Jacobian rank, fiber types and emptiness outside the closure.
"""

from typing import Any, Optional, Sequence, Tuple

import numpy as np

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.algebraic import (
    AlgebraicModel,
    CertificateReport,
    DimensionPolicy,
    FiberKind,
    FiberSample,
    FiberType,
    SphereFactor,
)
from app.models.domain import Membership, NCDomain
from app.models.polynomial import Polynomial, exact_sqrt
from app.services.domain_service import get_domain_service
from app.utils.exceptions import DimensionError, ImageError, InvalidParameterError, NotOnVarietyError

logger = get_logger(__name__)


def allocate_dims(total: int, blocks: int, policy: DimensionPolicy) -> Tuple[int, ...]:
    """
    Split ``total`` sphere coordinates into ``blocks`` positive block sizes.

    Balanced sizes differ by at most one with the larger blocks first;
    front-loaded gives every block one coordinate and the rest to the first.
    """
    if policy is DimensionPolicy.FRONT_LOADED:
        return (total - blocks + 1,) + (1,) * (blocks - 1)
    base, extra = divmod(total, blocks)
    return tuple(base + 1 if i < extra else base for i in range(blocks))


class AlgebraicService:
    """Service for polynomial models of domain closures."""

    def __init__(self):
        """Initialize algebraic service."""
        self.settings = get_settings()
        self.domains = get_domain_service()

    # === Emission ===

    def emit_model(
        self,
        domain: NCDomain,
        m: Optional[int] = None,
        policy: DimensionPolicy | str | None = None,
    ) -> AlgebraicModel:
        """
        Emit the system of a domain.

        Args:
            domain: Domain with constraints f_1..f_l in k variables
            m: Manifold dimension; defaults to k + l
            policy: Block size policy; defaults to the configured one

        Returns:
            AlgebraicModel: l polynomials in m + l variables

        Raises:
            InvalidParameterError: If m < k
        """
        k, l = domain.ambient_dim, domain.num_constraints  # noqa: E741
        m = k + l if m is None else m
        if m < k:
            raise InvalidParameterError(
                f"Manifold dimension {m} is below the floor m >= k = {k}",
                {"m": m, "k": k},
            )
        policy = DimensionPolicy(policy or self.settings.default_model_policy)
        dims = allocate_dims(m + l - k, l, policy)
        num_vars = m + l

        system = []
        start = k
        for f, size in zip(domain.constraints, dims):
            lifted = f.substitute({i: i for i in range(k)}, num_vars)
            squares = Polynomial.zero(num_vars)
            for index in range(start, start + size):
                y = Polynomial.variable(index, num_vars)
                squares = squares + y * y
            system.append(lifted - squares)
            start += size

        model = AlgebraicModel(domain, m, dims, tuple(system), policy)
        logger.info("model_emitted", m=m, k=k, l=l, dims=list(dims), policy=policy.value)
        return model

    # === Points on the variety ===

    def sample_fiber_point(self, model: AlgebraicModel, x: Sequence[Any]) -> FiberSample:
        """
        Point above ``x`` with each y block ``(sqrt(f_i(x)), 0, ..., 0)``.

        Raises:
            ImageError: If ``x`` is outside the domain closure
        """
        domain = model.domain
        point = domain.check_point(x)
        membership = self.domains.closure_membership(domain, point)
        if membership is Membership.OUTSIDE:
            raise ImageError(
                "Point lies outside the closure, which is the image of the projection",
                {"point": [str(c) for c in point]},
            )
        values = [f.evaluate(point) for f in domain.constraints]
        roots = [exact_sqrt(v) for v in values]
        coords = [float(c) for c in point]
        exact = list(point)
        for value, root, size in zip(values, roots, model.dims):
            block = [0.0] * size
            block[0] = float(value) ** 0.5
            coords.extend(block)
            if root is not None:
                exact.extend([root] + [0] * (size - 1))
        is_exact = all(root is not None for root in roots)
        return FiberSample(
            np.array(coords, dtype=float),
            tuple(exact) if is_exact else None,
        )

    def _term_scale(self, poly: Polynomial, p: np.ndarray) -> float:
        magnitude = Polynomial(poly.num_vars, {e: abs(c) for e, c in poly.terms.items()})
        return max(1.0, float(magnitude.evaluate_array(list(np.abs(p)))))

    def jacobian(self, model: AlgebraicModel, p: np.ndarray) -> np.ndarray:
        """Float Jacobian of the system at ``p``, one row per polynomial."""
        coords = list(np.asarray(p, dtype=float))
        return np.array(
            [
                [float(F.partial(j).evaluate_array(coords)) for j in range(model.num_vars)]
                for F in model.system
            ]
        )

    def jacobian_rank(
        self,
        model: AlgebraicModel,
        p: Sequence[float] | np.ndarray | FiberSample,
        tolerance: Optional[float] = None,
    ) -> int:
        """
        Numerical rank of the Jacobian at a point of the variety.

        Args:
            model: Emitted model
            p: Point in R^(m+l) or a FiberSample
            tolerance: Relative singular value threshold; configured default

        Returns:
            int: Number of singular values above ``tolerance * s_max``

        Raises:
            NotOnVarietyError: If some |F_i(p)| exceeds the on-variety tolerance
        """
        point = p.point if isinstance(p, FiberSample) else np.asarray(p, dtype=float)
        if point.shape != (model.num_vars,):
            raise DimensionError(
                f"Point has shape {point.shape}, model has {model.num_vars} variables"
            )
        tolerance = self.settings.rank_tolerance if tolerance is None else tolerance
        for index, F in enumerate(model.system):
            residual = abs(float(F.evaluate_array(list(point))))
            if residual > self.settings.on_variety_tolerance * self._term_scale(F, point):
                raise NotOnVarietyError(
                    f"Point is off the variety: |F_{index + 1}| = {residual:.3e}",
                    {"polynomial": index + 1, "residual": residual},
                )
        singular = np.linalg.svd(self.jacobian(model, point), compute_uv=False)
        if singular.size == 0 or singular[0] == 0:
            return 0
        return int(np.sum(singular > tolerance * singular[0]))

    # === Fibers ===

    def fiber_type(self, model: AlgebraicModel, x: Sequence[Any]) -> FiberType:
        """
        Closed-form fiber of the projection over ``x``.

        Each block is an independent sphere of squared radius f_i(x): empty
        when some value is negative, a point when all vanish, otherwise a
        product of spheres and points.
        """
        domain = model.domain
        point = domain.check_point(x)
        values = [f.evaluate(point) for f in domain.constraints]
        if any(v < 0 for v in values) or not domain.in_neighborhood_closure(point):
            return FiberType(FiberKind.EMPTY)
        factors = tuple(
            SphereFactor(index, size - 1, value)
            for index, (value, size) in enumerate(zip(values, model.dims))
        )
        if all(factor.degenerate for factor in factors):
            return FiberType(FiberKind.POINT, factors)
        return FiberType(FiberKind.SPHERES, factors)

    def certify(
        self,
        model: AlgebraicModel,
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
    ) -> CertificateReport:
        """
        Sampled certificates of rank, fiber dimension and emptiness.

        Interior and boundary samples must have Jacobian rank l; interior
        fibers have dimension m − k and boundary fibers lose dimension unless a
        block of size one only collapses from two points to one.
        """
        domain = model.domain
        report = CertificateReport(
            expected_rank=model.l,
            expected_fiber_dimension=model.m - model.k,
            strict_boundary_drop=all(size >= 2 for size in model.dims),
        )
        interior = self.domains.interior_samples(
            domain, self.settings.certificate_interior_samples, seed
        )
        count = self.settings.certificate_boundary_samples
        per_constraint = -(-count // model.l)
        boundary = self.domains.boundary_samples(domain, per_constraint)[:count]
        outside = self.domains.outside_samples(domain, self.settings.certificate_outside_samples)

        for x in interior:
            report.interior_ranks.append(
                self.jacobian_rank(model, self.sample_fiber_point(model, x), tolerance)
            )
            report.interior_fiber_dimensions.append(self.fiber_type(model, x).dimension)
        for x in boundary:
            report.boundary_ranks.append(
                self.jacobian_rank(model, self.sample_fiber_point(model, x), tolerance)
            )
            report.boundary_fiber_dimensions.append(self.fiber_type(model, x).dimension)
        for x in outside:
            report.outside_empty.append(self.fiber_type(model, x).kind is FiberKind.EMPTY)

        logger.info(
            "model_certified",
            passed=report.passed,
            interior=len(interior),
            boundary=len(boundary),
            outside=len(outside),
        )
        return report


# Singleton instance
_algebraic_service: AlgebraicService | None = None


def get_algebraic_service() -> AlgebraicService:
    """
    Get algebraic service instance (singleton).

    Returns:
        AlgebraicService: Algebraic service instance
    """
    global _algebraic_service
    if _algebraic_service is None:
        _algebraic_service = AlgebraicService()
    return _algebraic_service


# Convenience exports
emit_model = lambda domain, m=None, policy=None: get_algebraic_service().emit_model(domain, m, policy)  # noqa: E731
sample_fiber_point = lambda model, x: get_algebraic_service().sample_fiber_point(model, x)  # noqa: E731
jacobian_rank = lambda model, p, tolerance=None: get_algebraic_service().jacobian_rank(  # noqa: E731
    model, p, tolerance
)
fiber_type = lambda model, x: get_algebraic_service().fiber_type(model, x)  # noqa: E731
certify = lambda model, seed=None: get_algebraic_service().certify(model, seed)  # noqa: E731
