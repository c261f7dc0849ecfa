"""
Tests for app/services/planarity_service.py

Tests planarity witnesses and level planarity against a brute-force oracle.
"""

from fractions import Fraction

import numpy as np
import pytest

from app.models.graph import LeveledGraph
from app.models.planarity import KuratowskiKind, KuratowskiWitness, LevelEmbedding
from app.services import get_graph_service
from app.services.planarity_service import get_planarity_service
from app.utils.exceptions import CapacityError, CertificateError


def random_leveled_multigraph(rng: np.random.Generator) -> LeveledGraph:
    """
    Random multigraph on at most 9 vertices over at most 5 integer levels.

    Edges join arbitrary distinct levels and may repeat. Graphs wider than
    four vertices per level, once every gap is subdivided, are redrawn so
    the brute-force oracle stays small.
    """
    graphs = get_graph_service()
    while True:
        size = int(rng.integers(2, 10))
        depth = int(rng.integers(2, 6))
        levels = [int(level) for level in rng.integers(0, depth, size=size)]
        edges = []
        for _ in range(int(rng.integers(1, size + 3))):
            u, w = (int(x) for x in rng.choice(size, size=2, replace=False))
            if levels[u] != levels[w]:
                edges.append((u, w))
        graph = LeveledGraph.from_lists(list(enumerate(levels)), edges)
        gaps = [Fraction(2 * k + 1, 2) for k in range(depth - 1)]
        full = graphs.refine(graph, gaps)
        if all(len(full.vertices_at(level)) <= 4 for level in full.levels()):
            return graph


def random_gap_levels(rng: np.random.Generator) -> list[Fraction]:
    """One to three non-integer levels in (-1, 5)."""
    count = int(rng.integers(1, 4))
    return [
        Fraction(int(k)) + Fraction(int(rng.integers(1, 4)), 4)
        for k in rng.integers(-1, 5, size=count)
    ]


class TestPlanarity:
    """Test planarity decisions and Kuratowski witnesses."""

    def test_theta_is_planar(self, theta_graph):
        """Test the rotation system and faces of the theta graph."""
        result = get_planarity_service().planarity_test(theta_graph)

        assert result.planar
        assert result.faces == 2
        assert result.witness is None
        assert set(theta_graph.vertices) <= set(result.rotation_system)

    def test_k5_witness(self, k5_graph):
        """Test that K5 yields a valid K5 witness."""
        service = get_planarity_service()

        result = service.planarity_test(k5_graph)

        assert not result.planar
        assert result.witness.kind is KuratowskiKind.K5
        assert result.witness.branch_vertices == (0, 1, 2, 3, 4)
        assert service.validate_witness(k5_graph, result.witness) == []

    def test_k33_witness(self, k33_graph):
        """Test that K3,3 yields a witness with its two sides."""
        service = get_planarity_service()

        result = service.planarity_test(k33_graph)

        assert result.witness.kind is KuratowskiKind.K33
        assert result.witness.sides == ((0, 1, 2), (3, 4, 5))
        assert len(result.witness.paths) == 9
        assert service.validate_witness(k33_graph, result.witness) == []

    def test_requested_kind_falls_back(self, k5_graph):
        """Test that K5 has no K3,3 subdivision and the search falls back."""
        result = get_planarity_service().planarity_test(k5_graph, kind=KuratowskiKind.K33)

        assert result.witness.kind is KuratowskiKind.K5

    def test_targeted_k5_search(self, k5_graph):
        """Test the targeted search on K5 itself."""
        witness = get_planarity_service().find_subdivision(k5_graph, KuratowskiKind.K5)

        assert witness is not None
        assert len(witness.paths) == 10

    def test_subdivided_k33(self):
        """Test a K3,3 whose edges pass through degree-two vertices."""
        vertices = [(v, v) for v in range(6)] + [(6 + i, 10 + i) for i in range(9)]
        edges = []
        for index, (u, w) in enumerate((u, w) for u in range(3) for w in range(3, 6)):
            edges.extend([(u, 6 + index), (w, 6 + index)])
        graph = LeveledGraph.from_lists(vertices, edges)
        service = get_planarity_service()

        result = service.planarity_test(graph, kind=KuratowskiKind.K33)

        assert result.witness.kind is KuratowskiKind.K33
        assert all(len(path) == 3 for path in result.witness.paths)
        assert service.validate_witness(graph, result.witness) == []

    def test_invalid_witness_is_reported(self, k5_graph):
        """Test that a witness missing most of its paths is rejected."""
        witness = KuratowskiWitness(
            KuratowskiKind.K33,
            (0, 1, 2, 3, 4, 5),
            ((0, 3),),
        )

        problems = get_planarity_service().validate_witness(k5_graph, witness)

        assert problems
        assert problems[-1].startswith("branch pairs without a path")

    def test_cap(self, k5_graph):
        """Test the vertex cap."""
        with pytest.raises(CapacityError):
            get_planarity_service().planarity_test(k5_graph, cap=4)

    def test_failed_witness_validation_raises(self, monkeypatch, k5_graph):
        """Test that a witness failing its own validation is an internal certificate error."""
        service = get_planarity_service()
        monkeypatch.setattr(service, "validate_witness", lambda graph, witness: ["broken path"])

        with pytest.raises(CertificateError) as exc_info:
            service.planarity_test(k5_graph)

        assert exc_info.value.exit_code == 4
        assert exc_info.value.details["problems"] == ["broken path"]


class TestLevelPlanarity:
    """Test level planarity decisions."""

    def test_theta_is_level_planar(self, theta_graph):
        """Test that theta has a crossing-free x-monotone drawing."""
        service = get_planarity_service()

        result = service.level_planarity_test(theta_graph)

        assert result.level_planar
        assert service.count_inversions(result.embedding) == 0
        assert [level for level, _ in result.embedding.orders] == theta_graph.levels()

    def test_k33_is_not_level_planar(self, k33_graph):
        """Test that a non-planar graph is not level planar."""
        assert not get_planarity_service().level_planarity_test(k33_graph).level_planar

    def test_planar_but_not_level_planar(self):
        """Test a planar graph whose levels force a crossing."""
        # hexagon 0-2-5-1-3-4 with a chord through the source 6
        graph = LeveledGraph.from_lists(
            [(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2), (6, 0)],
            [(0, 2), (1, 3), (2, 5), (3, 4), (0, 4), (1, 5), (6, 2), (6, 3)],
        )
        service = get_planarity_service()

        assert service.planarity_test(graph).planar
        assert not service.level_planarity_test(graph).level_planar
        assert not service.level_planarity_oracle(graph)

    def test_cap(self, theta_graph):
        """Test the cap on the proper refinement."""
        with pytest.raises(CapacityError):
            get_planarity_service().level_planarity_test(theta_graph, cap=3)

    def test_count_inversions_of_crossing_orders(self):
        """Test that swapping the upper endpoints of two edges counts one inversion."""
        graph = LeveledGraph.from_lists([(0, 0), (1, 0), (2, 1), (3, 1)], [(0, 2), (1, 3)])
        service = get_planarity_service()

        crossing = LevelEmbedding(graph, ((Fraction(0), (0, 1)), (Fraction(1), (3, 2))))
        straight = LevelEmbedding(graph, ((Fraction(0), (0, 1)), (Fraction(1), (2, 3))))

        assert service.count_inversions(crossing) == 1
        assert service.count_inversions(straight) == 0

    def test_long_edge_embedding_has_no_inversions(self):
        """Test the embedding of a triangle with a doubled long edge."""
        graph = LeveledGraph.from_lists(
            [(0, 0), (1, 1), (2, 3)],
            [(0, 2), (0, 1), (1, 2), (0, 2)],
        )
        service = get_planarity_service()

        result = service.level_planarity_test(graph)

        assert result.level_planar
        assert len(result.embedding.orders) == 3
        assert service.count_inversions(result.embedding) == 0

    def test_agrees_with_oracle_on_random_multigraphs(self):
        """Test the search against brute force on random multigraphs with long and parallel edges."""
        rng = np.random.default_rng(7)
        graphs = get_graph_service()
        service = get_planarity_service()

        for _ in range(200):
            graph = random_leveled_multigraph(rng)
            result = service.level_planarity_test(graph)
            planar = service.planarity_test(graph).planar

            assert result.level_planar == service.level_planarity_oracle(graph)
            if result.level_planar:
                assert planar
                assert service.count_inversions(result.embedding) == 0

            refined = graphs.refine(graph, random_gap_levels(rng))
            assert service.level_planarity_test(refined).level_planar == result.level_planar
            assert service.planarity_test(refined).planar == planar
