"""
Tests for app/services/theorem_service.py

Tests hypothesis checks and the three covering families.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from app.models.planarity import KuratowskiKind
from app.models.theorems import Reduction, TheoremTag
from app.services import get_graph_service, get_planarity_service, get_reeb_service
from app.services.grid_oracle import get_grid_oracle
from app.services.theorem_service import get_theorem_service
from app.utils.exceptions import ConditionError, InvalidParameterError


class TestValidateConditions:
    """Test the arc hypotheses on Reeb graphs of band domains."""

    def test_theta_fails_two_to_one(self, theta_graph):
        """Test that theta has no two points joined to one across a thin slab."""
        report = get_theorem_service().validate_conditions(
            theta_graph, Fraction(-1, 2), Fraction(1, 2), TheoremTag.MT1
        )

        assert not report.passed
        assert report.verdict("C4").passed
        assert not report.verdict("C5").passed
        assert len(report.points["t1"]) == 2
        assert len(report.points["t2"]) == 2
        assert report.diagnostics[0].startswith("C5: ")

    def test_offset_theta_passes_two_to_one(self, offset_theta_graph):
        """Test that two points below a saddle join one point above it."""
        report = get_theorem_service().validate_conditions(offset_theta_graph, 1, 3, TheoremTag.MT1)

        assert report.passed
        assert report.verdict("C5").detail == "C5.1"
        assert len(report.arcs) == 2
        assert {arc.end for arc in report.arcs} == set(report.points["t2"])

    def test_arcs_are_paths_of_the_refined_graph(self, offset_theta_graph):
        """Test that every arc step is an edge of the refined graph."""
        report = get_theorem_service().validate_conditions(offset_theta_graph, 1, 3, TheoremTag.MT1)

        for arc in report.arcs:
            for edge_id, (u, w) in zip(arc.edges, zip(arc.vertices, arc.vertices[1:])):
                edge = report.graph.edges[edge_id]
                assert {edge.lower, edge.upper} == {u, w}

    def test_vertex_at_cut_level_fails(self, offset_theta_graph):
        """Test that a cut level carrying a vertex is reported."""
        report = get_theorem_service().validate_conditions(offset_theta_graph, 0, 3, TheoremTag.MT1)

        assert not report.verdict("C4").passed
        assert report.verdict("C4").detail == "vertices at level 0"

    def test_three_by_three(self, double_holes_domain):
        """Test nine arcs between three points on each cut level."""
        graph = get_reeb_service().reeb_exact(double_holes_domain)

        report = get_theorem_service().validate_conditions(graph, 1, 5, TheoremTag.MT2)

        assert report.passed
        assert len(report.points["t1"]) == 3
        assert len(report.points["t2"]) == 3
        assert len(report.arcs) == 9

    def test_two_by_three_with_reductions(self, mixed_holes_domain):
        """Test the K5 hypotheses and both remark conditions."""
        graph = get_reeb_service().reeb_exact(mixed_holes_domain)

        report = get_theorem_service().validate_conditions(
            graph, 1, 5, TheoremTag.MT3, reduction=Reduction.BC
        )

        assert report.passed
        assert [c.name for c in report.conditions] == [
            "C2''",
            "C3.1''",
            "C3.2''",
            "reduction.C",
            "reduction.B",
        ]
        assert len(report.arcs) == 6 + 4

    def test_default_outer_levels(self, mixed_holes_domain):
        """Test midpoints of the extreme level pairs."""
        graph = get_reeb_service().reeb_exact(mixed_holes_domain)

        assert get_theorem_service().default_outer_levels(graph) == (
            Fraction(-9, 2),
            Fraction(21, 2),
        )

    def test_outer_levels_must_bracket_cut_levels(self, mixed_holes_domain):
        """Test that t1' < t1 < t2 < t2' is enforced."""
        graph = get_reeb_service().reeb_exact(mixed_holes_domain)

        with pytest.raises(InvalidParameterError):
            get_theorem_service().validate_conditions(
                graph, 1, 5, TheoremTag.MT3, outer_levels=(2, 10)
            )

    def test_cut_levels_must_increase(self, theta_graph):
        """Test that t1 >= t2 is rejected."""
        with pytest.raises(InvalidParameterError):
            get_theorem_service().validate_conditions(theta_graph, 1, -1)

    def test_missing_cut_levels(self, theta_graph):
        """Test that covering tags need both cut levels."""
        with pytest.raises(InvalidParameterError):
            get_theorem_service().validate_conditions(theta_graph, tag=TheoremTag.MT2)


class TestPlanarRealisation:
    """Test the planar realisation hypotheses."""

    def test_theta_passes(self, theta_graph):
        """Test that theta meets every condition."""
        report = get_theorem_service().validate_conditions(theta_graph, tag=TheoremTag.THM2)

        assert report.passed
        assert report.verdict("level_planar").passed

    def test_degree_four_vertex_fails(self, two_band_domain):
        """Test that the contact vertex of touching holes breaks the degree condition."""
        graph = get_reeb_service().reeb_exact(two_band_domain)

        report = get_theorem_service().validate_conditions(graph, tag="thm2")

        assert not report.verdict("degrees").passed
        assert report.verdict("connected").passed


class TestMt1Family:
    """Test the non-level-planar family."""

    def test_first_member(self, offset_theta_domain):
        """Test the predicted graph of member 1 with a fixed factor radius."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 1, factor_radius=20)
        graphs = get_graph_service()
        prediction = result.prediction

        assert prediction.num_vertices == 8
        assert prediction.num_edges == 10
        assert graphs.betti1(prediction) == 3
        assert [graphs.sheet_count(prediction, t) for t in graphs.regular_levels(prediction)] == [
            1,
            2,
            4,
            2,
            1,
        ]
        assert graphs.sheet_count(prediction, Fraction(3, 2)) == 4
        assert result.fold_counts[0].fold == 2
        assert result.domain.ambient_dim == 3
        assert result.manifold_dimension == 7

    def test_first_member_is_not_level_planar(self, offset_theta_domain):
        """Test that the prediction has no level planar drawing."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 1, factor_radius=20)

        assert not get_planarity_service().level_planarity_test(result.prediction).level_planar

    def test_second_member(self, offset_theta_domain):
        """Test the predicted graph of member 2."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 2, factor_radius=20)
        graphs = get_graph_service()

        assert result.prediction.num_vertices == 9
        assert result.prediction.num_edges == 13
        assert graphs.betti1(result.prediction) == 5
        assert result.fold_counts[0].fold == 3
        assert graphs.sheet_count(result.prediction, Fraction(3, 2)) == 6

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_covering_law(self, offset_theta_domain, offset_theta_graph, i):
        """Test that the prediction covers the cut band i+1 times, sheets and vertices alike."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, i, factor_radius=20)
        graphs = get_graph_service()

        def inner_vertices(graph):
            return [v for v in graph.essential_vertices() if 1 < graph.level(v) < 3]

        assert graphs.sheet_count(result.prediction, Fraction(3, 2)) == (i + 1) * 2
        assert len(inner_vertices(result.prediction)) == (i + 1) * len(inner_vertices(offset_theta_graph))

    def test_prediction_matches_grid_oracle(self, offset_theta_domain):
        """Test the first prediction against the grid graph of the lifted domain."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 1)
        graphs = get_graph_service()

        grid = graphs.smooth(get_grid_oracle().reeb_grid_oracle(result.domain, resolution=120))

        assert grid.num_vertices == 8
        assert grid.num_edges == 10
        assert graphs.is_isomorphic(grid, result.prediction, mode="leveled")[0]

    def test_members_are_pairwise_distinct(self, offset_theta_domain):
        """Test that Betti numbers grow with the index and no two members are isomorphic."""
        service = get_theorem_service()
        graphs = get_graph_service()

        predictions = [service.mt1_family(offset_theta_domain, 1, 3, i).prediction for i in range(1, 6)]

        assert [graphs.betti1(p) for p in predictions] == [3, 5, 7, 9, 11]
        for first, second in combinations(predictions, 2):
            assert not graphs.is_isomorphic(first, second, mode="plain")[0]

    def test_default_factor_radius(self, offset_theta_domain):
        """Test the smallest integer radius clearing the base levels."""
        result = get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 1)

        assert result.factor.outer_radius == 12
        assert result.factor.outer_center == (2, 0)

    def test_failing_hypotheses_raise_condition_error(self, theta_domain):
        """Test that a base failing the hypotheses is refused."""
        with pytest.raises(ConditionError) as exc_info:
            get_theorem_service().mt1_family(theta_domain, Fraction(-1, 2), Fraction(1, 2), 1)

        assert exc_info.value.details["tag"] == "mt1"
        assert exc_info.value.details["failed"] == ["C5"]

    def test_index_must_be_positive(self, offset_theta_domain):
        """Test that index 0 is rejected."""
        with pytest.raises(InvalidParameterError):
            get_theorem_service().mt1_family(offset_theta_domain, 1, 3, 0)


class TestMt2Family:
    """Test the K3,3 family."""

    def test_fold_is_index_plus_eight(self, double_holes_domain):
        """Test the covering degree over the cut band."""
        result = get_theorem_service().mt2_family(double_holes_domain, 1, 5, 1)

        assert result.tag is TheoremTag.MT2
        assert result.fold_counts[0].fold == 9
        assert result.factor.bands[0].holes == 8

    @pytest.mark.parametrize("i", [1, 2])
    def test_prediction_contains_k33(self, double_holes_domain, i):
        """Test that each prediction is non-planar with a validated K3,3 witness."""
        result = get_theorem_service().mt2_family(double_holes_domain, 1, 5, i)
        planarity = get_planarity_service()

        outcome = planarity.planarity_test(result.prediction)

        assert result.fold_counts[0].fold == i + 8
        assert not outcome.planar
        assert outcome.witness.kind is KuratowskiKind.K33
        assert planarity.validate_witness(result.prediction, outcome.witness) == []

    def test_members_are_not_isomorphic(self, double_holes_domain):
        """Test that the first two members differ."""
        service = get_theorem_service()

        first = service.mt2_family(double_holes_domain, 1, 5, 1).prediction
        second = service.mt2_family(double_holes_domain, 1, 5, 2).prediction

        assert not get_graph_service().is_isomorphic(first, second, mode="plain")[0]


class TestMt3Family:
    """Test the K5 family."""

    def test_folds_without_reduction(self, mixed_holes_domain):
        """Test folds over the three touching factor bands."""
        result = get_theorem_service().mt3_family(mixed_holes_domain, 1, 5, (1, 1, 1))

        assert [f.fold for f in result.fold_counts] == [2, 10, 3]
        assert result.factor.stagger
        assert result.auxiliary_levels == {
            "t1_outer": Fraction(-9, 2),
            "t2_outer": Fraction(21, 2),
            "t0": Fraction(-7, 4),
            "t3": Fraction(31, 4),
        }

    @pytest.mark.parametrize(
        "reduction, middle",
        [
            (Reduction.NONE, 10),
            (Reduction.C, 8),
            (Reduction.B, 7),
            (Reduction.BC, 6),
        ],
    )
    def test_reductions_shrink_middle_fold(self, mixed_holes_domain, reduction, middle):
        """Test the middle fold under each licensed reduction."""
        result = get_theorem_service().mt3_family(
            mixed_holes_domain, 1, 5, (1, 1, 1), reduction=reduction
        )

        assert result.fold_counts[1].fold == middle
        assert result.reduction is reduction

    @pytest.mark.parametrize(
        "reduction, folds",
        [
            (Reduction.NONE, [2, 10, 3]),
            (Reduction.C, [2, 8, 3]),
            (Reduction.B, [2, 7, 3]),
            (Reduction.BC, [2, 6, 3]),
        ],
    )
    def test_prediction_contains_k5(self, mixed_holes_domain, reduction, folds):
        """Test that every reduction still yields a validated K5 witness."""
        result = get_theorem_service().mt3_family(
            mixed_holes_domain, 1, 5, (1, 1, 1), reduction=reduction
        )
        planarity = get_planarity_service()

        outcome = planarity.planarity_test(result.prediction)

        assert [f.fold for f in result.fold_counts] == folds
        assert not outcome.planar
        assert outcome.witness.kind is KuratowskiKind.K5
        assert planarity.validate_witness(result.prediction, outcome.witness) == []

    def test_indices_must_be_positive(self, mixed_holes_domain):
        """Test that a zero index is rejected."""
        with pytest.raises(InvalidParameterError):
            get_theorem_service().mt3_family(mixed_holes_domain, 1, 5, (1, 0, 1))
