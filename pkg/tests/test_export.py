"""
Tests for app/services/export_service.py
"""

from app.services import get_planarity_service, get_reeb_service
from app.services.export_service import get_export_service


class TestToDot:
    """Test DOT rendering."""

    def test_ranks_follow_levels(self, theta_graph):
        """Test one rank per level with the level as label."""
        dot = get_export_service().to_dot(theta_graph, name="theta")

        assert dot.startswith('graph "theta" {\n')
        assert dot.count("rank=same;") == 4
        assert 'xlabel="-10"' in dot
        assert "penwidth" not in dot

    def test_witness_paths_are_colored(self, k5_graph):
        """Test that each witness path gets a color and branch vertices are filled."""
        witness = get_planarity_service().planarity_test(k5_graph).witness

        dot = get_export_service().to_dot(k5_graph, witness)

        assert dot.count("penwidth=2") == 10
        assert dot.count("fillcolor=red") == 5

    def test_output_is_deterministic(self, theta_domain, theta_graph):
        """Test that independently computed graphs render to equal text."""
        rebuilt = get_reeb_service().reeb_exact(theta_domain)

        assert get_export_service().to_dot(rebuilt) == get_export_service().to_dot(theta_graph)
