"""
Exact Reeb graphs of the first-coordinate projection on planar circle domains.

The closure of an outer disk minus disjoint hole disks is swept along x1.
Between consecutive critical levels every slice is the outer chord minus the
open hole chords, so the slice components are indexed by how many holes lie
below them.
"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from app.core.logging import get_logger
from app.models.domain import NCDomain, SliceReport
from app.models.graph import Edge, LeveledGraph, Vertex
from app.models.polynomial import CircleShape
from app.services.domain_service import CircleArrangement, get_domain_service
from app.services.graph_service import get_graph_service
from app.utils.rationals import format_rational, to_fraction

logger = get_logger(__name__)


class ReebService:
    """Service for the exact sweep."""

    def __init__(self):
        """Initialize reeb service."""
        self.domains = get_domain_service()
        self.graphs = get_graph_service()

    def reeb_exact(self, domain: NCDomain) -> LeveledGraph:
        """
        Reeb graph of ``x1`` on the closure of an outer disk with holes.

        Args:
            domain: Planar domain with one inside-positive circle and hole circles

        Returns:
            LeveledGraph: Smoothed graph in canonical numbering; essential
                vertices are the slice components through extreme points

        Raises:
            UnsupportedDomainError: If the domain is not such an arrangement
        """
        arrangement = self.domains.circle_arrangement(domain)
        holes = [shape for _, shape in arrangement.holes]
        levels = self._critical_levels(arrangement)

        vertex_ids: Dict[Tuple[int, int], int] = {}
        vertices: List[Vertex] = []
        for a, level in enumerate(levels):
            strict = self._strict_holes(holes, level)
            singular = self._singular_components(arrangement, holes, strict, level)
            for component in range(len(strict) + 1):
                vertex_ids[(a, component)] = len(vertices)
                vertices.append(Vertex(len(vertices), level, component in singular))

        edges: List[Edge] = []
        for a, (lo, hi) in enumerate(zip(levels, levels[1:])):
            spanning = sorted(
                (h for h in holes if h.extremes()[0] <= lo and h.extremes()[1] >= hi),
                key=lambda h: h.center[1],
            )
            for track in range(len(spanning) + 1):
                below = spanning[:track]
                start = sum(1 for h in below if h.extremes()[0] < lo)
                end = sum(1 for h in below if h.extremes()[1] > hi)
                edges.append(Edge(len(edges), vertex_ids[(a, start)], vertex_ids[(a + 1, end)]))

        graph = self.graphs.smooth(LeveledGraph(vertices, edges)).canonical()
        logger.info(
            "reeb_graph_computed",
            method="exact",
            vertices=graph.num_vertices,
            edges=graph.num_edges,
            levels=[format_rational(t) for t in graph.levels()],
        )
        return graph

    @staticmethod
    def _critical_levels(arrangement: CircleArrangement) -> List[Fraction]:
        levels = set(arrangement.outer.extremes())
        for _, hole in arrangement.holes:
            levels.update(hole.extremes())
        return sorted(levels)

    @staticmethod
    def _strict_holes(holes: List[CircleShape], level: Fraction) -> List[CircleShape]:
        """Holes whose open chord at ``level`` is non-empty, bottom to top."""
        return sorted(
            (h for h in holes if h.extremes()[0] < level < h.extremes()[1]),
            key=lambda h: h.center[1],
        )

    @staticmethod
    def _singular_components(
        arrangement: CircleArrangement,
        holes: List[CircleShape],
        strict: List[CircleShape],
        level: Fraction,
    ) -> set:
        singular = set()
        if level in arrangement.outer.extremes():
            singular.add(0)
        for hole in holes:
            if level in hole.extremes():
                singular.add(sum(1 for h in strict if h.center[1] < hole.center[1]))
        return singular

    def count_components_at(self, domain: NCDomain, t: Any) -> SliceReport:
        """
        Connected components of the closure slice ``x1 = t``.

        Component intervals are reported in floating point; the count is exact.
        """
        level = to_fraction(t)
        arrangement = self.domains.circle_arrangement(domain)
        outer = arrangement.outer
        lo, hi = outer.extremes()
        if not lo <= level <= hi:
            return SliceReport(level, 0, ())

        def _half_chord(shape: CircleShape) -> float:
            return math.sqrt(float(shape.radius_squared - (level - shape.center[0]) ** 2))

        reach = _half_chord(outer)
        cy = float(outer.center[1])
        components: List[Tuple[float, float]] = []
        bottom = cy - reach
        for hole in self._strict_holes([h for _, h in arrangement.holes], level):
            half = _half_chord(hole)
            components.append((bottom, float(hole.center[1]) - half))
            bottom = float(hole.center[1]) + half
        components.append((bottom, cy + reach))
        report = SliceReport(level, len(components), tuple(components))
        logger.debug("slice_counted", level=level, count=report.count)
        return report


# Singleton instance
_reeb_service: ReebService | None = None


def get_reeb_service() -> ReebService:
    """
    Get reeb service instance (singleton).

    Returns:
        ReebService: Reeb service instance
    """
    global _reeb_service
    if _reeb_service is None:
        _reeb_service = ReebService()
    return _reeb_service


# Convenience exports
reeb_exact = lambda domain: get_reeb_service().reeb_exact(domain)  # noqa: E731
count_components_at = lambda domain, t: get_reeb_service().count_components_at(domain, t)  # noqa: E731
