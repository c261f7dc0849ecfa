"""
Tests for app/services/domain_service.py

Tests band construction, product lifts, membership and transversality.
"""

from fractions import Fraction

import numpy as np
import pytest

from app.models.domain import Ball, BandSpec, Membership, NCDomain
from app.models.polynomial import Polynomial, sphere_poly
from app.services.domain_service import (
    DomainService,
    exact_rank,
    get_domain_service,
    hole_offsets,
)
from app.utils.exceptions import (
    DimensionError,
    DomainBuildError,
    InvalidParameterError,
    UnsupportedDomainError,
)


class TestBandSpec:
    """Test band spec validation."""

    def test_levels_are_sorted_and_unique(self, two_band_spec):
        """Test that touching bands share their common level."""
        assert two_band_spec.levels() == [0, 2, 4]

    def test_all_violations_reported_together(self):
        """Test that every broken invariant is listed at once."""
        with pytest.raises(InvalidParameterError) as exc_info:
            BandSpec.create([(2, 0, 1), (-1, 3, 0)], (0, 0), -1)

        violations = exc_info.value.details["violations"]
        assert "outer_radius: must be positive" in violations
        assert "bands[0]: t1 must be smaller than t2" in violations
        assert "bands[1]: hole count must be positive" in violations
        assert "bands[1]: must start at or after the end of bands[0]" in violations

    def test_hole_offsets_odd_and_even(self):
        """Test the alternating placement of holes."""
        assert hole_offsets(1, Fraction(1)) == [0]
        assert hole_offsets(2, Fraction(1)) == [-3, 3]
        assert hole_offsets(3, Fraction(1)) == [0, -3, 3]
        assert hole_offsets(1, Fraction(1), shifted=True) == [Fraction(3, 2)]


class TestBuildBandDomain:
    """Test the band domain builder."""

    def test_theta_constraints(self, theta_domain):
        """Test outer circle plus one hole for the theta spec."""
        assert theta_domain.ambient_dim == 2
        assert theta_domain.num_constraints == 2
        assert theta_domain.provenance == "band"
        assert theta_domain.intended_intersections == frozenset()

        outer, hole = (f.as_circle() for f in theta_domain.constraints)
        assert outer.inside_positive and outer.radius == 10
        assert not hole.inside_positive and hole.radius == 1
        assert hole.center == (0, 0)

    def test_touching_bands_record_contact(self, two_band_domain):
        """Test that tangent holes of touching bands are intended intersections."""
        assert two_band_domain.intended_intersections == frozenset({(1, 2)})

    def test_outer_radius_floor(self):
        """Test that a radius below three times the reach is rejected."""
        spec = BandSpec.create([(-1, 1, 1)], (0, 0), 2)

        with pytest.raises(DomainBuildError, match="floor"):
            get_domain_service().build_band_domain(spec)

    def test_floor_ignores_hole_offsets(self):
        """Test that stacked holes need only three times the reach, plus room to fit."""
        domain = get_domain_service().build_band_domain(BandSpec.create([(-1, 1, 2)], (0, 0), 10))

        assert domain.num_constraints == 3

    def test_holes_must_fit(self):
        """Test that holes leaving the outer disk are rejected."""
        spec = BandSpec.create([(-1, 1, 5)], (0, 0), 3)

        with pytest.raises(DomainBuildError, match="does not fit"):
            get_domain_service().build_band_domain(spec)

    def test_stagger_shifts_odd_bands(self):
        """Test that staggering moves the holes of the second band."""
        spec = BandSpec.create([(0, 2, 1), (2, 4, 1)], (2, 0), 20, stagger=True)

        domain = get_domain_service().build_band_domain(spec)

        centers = [f.as_circle().center for f in domain.constraints[1:]]
        assert centers == [(1, 0), (3, Fraction(3, 2))]
        assert domain.intended_intersections == frozenset()


class TestLiftProduct:
    """Test cylinder products."""

    def test_dimensions_and_contacts(self, theta_domain, offset_theta_domain):
        """Test the lifted domain of two planar factors."""
        lifted = get_domain_service().lift_product(theta_domain, offset_theta_domain)

        assert lifted.ambient_dim == 3
        assert lifted.num_constraints == 4
        assert lifted.provenance == "product"
        assert lifted.intended_intersections == frozenset({(0, 2), (0, 3), (1, 2), (1, 3)})

    def test_second_factor_uses_new_axis(self, theta_domain, offset_theta_domain):
        """Test that the second factor's y becomes the third coordinate."""
        lifted = get_domain_service().lift_product(theta_domain, offset_theta_domain)

        assert lifted.constraints[2].variables() == [0, 2]
        assert lifted.constraints[0].variables() == [0, 1]

    def test_non_planar_second_factor_raises_error(self, theta_domain):
        """Test that the second factor must be planar."""
        ball = NCDomain(3, (sphere_poly((0, 0, 0), 1, 3),))

        with pytest.raises(DimensionError):
            get_domain_service().lift_product(theta_domain, ball)

    def test_membership_is_the_product_of_slices(self, theta_domain, offset_theta_domain):
        """Test that a lifted point lies in the domain exactly when both projections do."""
        service = get_domain_service()
        lifted = service.lift_product(theta_domain, offset_theta_domain)
        rng = np.random.default_rng(7)

        for _ in range(500):
            x, y, z = (Fraction(int(c), 20) for c in rng.integers(-220, 221, size=3))
            first = service.closure_membership(theta_domain, (x, y))
            second = service.closure_membership(offset_theta_domain, (x, z))

            result = service.closure_membership(lifted, (x, y, z))

            if first is Membership.INTERIOR and second is Membership.INTERIOR:
                assert result is Membership.INTERIOR
            elif Membership.OUTSIDE in (first, second):
                assert result is Membership.OUTSIDE
            else:
                assert result is Membership.BOUNDARY


class TestMembership:
    """Test closure classification."""

    @pytest.mark.parametrize(
        "point, expected",
        [
            ((5, 0), Membership.INTERIOR),
            ((1, 0), Membership.BOUNDARY),
            ((10, 0), Membership.BOUNDARY),
            ((0, 0), Membership.OUTSIDE),
            ((11, 0), Membership.OUTSIDE),
        ],
    )
    def test_theta_membership(self, theta_domain, point, expected):
        """Test interior, boundary and outside points of the theta domain."""
        assert get_domain_service().closure_membership(theta_domain, point) is expected

    def test_wrong_dimension_raises_error(self, theta_domain):
        """Test that a 3-D point is rejected for a planar domain."""
        with pytest.raises(DimensionError):
            get_domain_service().closure_membership(theta_domain, (0, 0, 0))

    def test_neighborhood_restricts_interior(self):
        """Test that points outside the neighborhood ball are not interior."""
        domain = NCDomain(
            2,
            (sphere_poly((0, 0), 10, 2),),
            neighborhood=(Ball((0, 1), (Fraction(0), Fraction(0)), Fraction(2)),),
        )

        assert get_domain_service().closure_membership(domain, (1, 0)) is Membership.INTERIOR
        assert get_domain_service().closure_membership(domain, (3, 0)) is Membership.OUTSIDE

    @pytest.mark.parametrize(
        "domain_fixture",
        [
            "theta_domain",
            "two_band_domain",
            "offset_theta_domain",
            "double_holes_domain",
            "mixed_holes_domain",
        ],
    )
    def test_agrees_with_constraint_signs(self, request, domain_fixture):
        """Test the classification of random and boundary points against constraint signs."""
        domain = request.getfixturevalue(domain_fixture)
        service = get_domain_service()
        rng = np.random.default_rng(7)
        box = service.default_box(domain)
        points = [
            tuple(Fraction(round(rng.uniform(lo, hi) * 1000), 1000) for lo, hi in box)
            for _ in range(1000)
        ]
        points += service.boundary_samples(domain, 8, only_closure=False)

        for point in points:
            signs = [f.evaluate(point) for f in domain.constraints]
            if all(v > 0 for v in signs):
                expected = Membership.INTERIOR
            elif all(v >= 0 for v in signs):
                expected = Membership.BOUNDARY
            else:
                expected = Membership.OUTSIDE
            assert service.closure_membership(domain, point) is expected


class TestTransversality:
    """Test sampled transversality."""

    def test_theta_is_transversal(self, theta_domain):
        """Test the generated samples of the theta domain."""
        report = get_domain_service().check_transversality(theta_domain, per_constraint=8)

        assert report.passed
        assert report.samples
        assert report.strata() == [(0,), (1,)]

    def test_touching_holes_fail_at_contact(self, two_band_domain):
        """Test that tangent holes have dependent normals at their contact point."""
        report = get_domain_service().check_transversality(two_band_domain, per_constraint=4)

        assert not report.passed
        failing = [report.samples[i] for i in report.failing]
        assert [s.point for s in failing] == [(2, 0)]
        assert failing[0].active == (1, 2)
        assert failing[0].rank == 1

    def test_explicit_samples(self, theta_domain):
        """Test explicit sample points and skipping of inactive ones."""
        report = get_domain_service().check_transversality(theta_domain, samples=[(1, 0), (5, 0)])

        assert report.passed
        assert len(report.samples) == 1
        assert report.skipped == ((5, 0),)

    def test_crossing_cylinders_are_transversal(self, theta_domain, offset_theta_domain):
        """Test the lifted product, including crossings of the two factors."""
        lifted = get_domain_service().lift_product(theta_domain, offset_theta_domain)

        report = get_domain_service().check_transversality(lifted, per_constraint=4)

        assert report.passed
        assert any(len(stratum) == 2 for stratum in report.strata())

    def test_exact_rank(self):
        """Test the exact rank of integer and rational rows."""
        assert exact_rank([(2, 0), (-2, 0)]) == 1
        assert exact_rank([(Fraction(1, 3), Fraction(2, 3)), (1, 2)]) == 1
        assert exact_rank([(Fraction(1, 3), 0), (0, Fraction(-2, 7))]) == 2
        assert exact_rank([(1, 2), (3, 4)]) == 2
        assert exact_rank([]) == 0


class TestCircleArrangement:
    """Test closed-form level computations."""

    def test_singular_levels_of_theta(self, theta_domain):
        """Test the first-coordinate extremes of the theta circles."""
        levels = [s.level for s in get_domain_service().singular_levels(theta_domain)]

        assert levels == [-10, -1, 1, 10]

    def test_non_circle_constraint_is_unsupported(self):
        """Test that the sweep refuses a non-circle constraint."""
        domain = NCDomain(2, (Polynomial(2, {(2, 0): 1, (0, 2): 2, (0, 0): -1}),))

        with pytest.raises(UnsupportedDomainError):
            get_domain_service().circle_arrangement(domain)

    def test_default_box_contains_outer_disk(self, theta_domain):
        """Test the bounding box with its margin."""
        box = get_domain_service().default_box(theta_domain)

        assert box == [(-10.5, 10.5), (-10.5, 10.5)]

    def test_boundary_samples_lie_on_circles(self, theta_domain):
        """Test that every boundary sample zeroes some constraint."""
        points = get_domain_service().boundary_samples(theta_domain, 6)

        assert points
        for point in points:
            assert any(f.evaluate(point) == 0 for f in theta_domain.constraints)

    def test_singleton(self):
        """Test that the service getter returns one instance."""
        assert get_domain_service() is get_domain_service()
        assert isinstance(get_domain_service(), DomainService)
