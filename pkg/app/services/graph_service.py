"""
Graph service for leveled multigraphs.

Refinement, smoothing, the leveled fiber product and the invariants used by
the covering constructions (first Betti number, sheet counts, isomorphism).
"""

from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Tuple

from networkx.algorithms.isomorphism import MultiGraphMatcher

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.graph import Edge, LeveledGraph, Vertex
from app.utils.exceptions import (
    CapacityError,
    GraphIntegrityError,
    InvalidParameterError,
    LevelError,
)
from app.utils.rationals import format_rational, to_fraction

logger = get_logger(__name__)


class GraphService:
    """Service for leveled graph operations."""

    def __init__(self):
        """Initialize graph service."""
        self.settings = get_settings()

    # === Normal forms ===

    def refine(self, graph: LeveledGraph, levels: Iterable[Any]) -> LeveledGraph:
        """
        Subdivide every edge strictly spanning a requested level.

        New vertices are non-essential; existing ids are kept and new ids are
        allocated above the current maximum. The lowest piece of a split edge
        keeps the edge id.

        Args:
            graph: Graph to refine
            levels: Levels to insert; levels of existing vertices are ignored

        Returns:
            LeveledGraph: Refined graph with the same metadata
        """
        wanted = sorted({to_fraction(level) for level in levels})
        if not wanted:
            return graph
        next_vertex, next_edge = graph.next_ids()
        vertices = list(graph.vertices.values())
        edges: List[Edge] = []
        for edge in graph.edges.values():
            lo, hi = graph.edge_span(edge.id)
            inner = [level for level in wanted if lo < level < hi]
            if not inner:
                edges.append(edge)
                continue
            chain = [edge.lower]
            for level in inner:
                vertices.append(Vertex(next_vertex, level, essential=False))
                chain.append(next_vertex)
                next_vertex += 1
            chain.append(edge.upper)
            for index, (lower, upper) in enumerate(zip(chain, chain[1:])):
                if index == 0:
                    edges.append(Edge(edge.id, lower, upper))
                else:
                    edges.append(Edge(next_edge, lower, upper))
                    next_edge += 1
        return LeveledGraph(vertices, edges, graph.metadata)

    def smooth(self, graph: LeveledGraph) -> LeveledGraph:
        """
        Remove every non-essential vertex by joining its two edges.

        Raises:
            GraphIntegrityError: If a non-essential vertex does not have degree 2
        """
        edges: Dict[int, Edge] = dict(graph.edges)
        lower_of: Dict[int, List[int]] = {v: graph.lower_edges(v) for v in graph.vertices}
        upper_of: Dict[int, List[int]] = {v: graph.upper_edges(v) for v in graph.vertices}
        kept = []
        for vertex in sorted(graph.vertices.values(), key=lambda v: v.id):
            if vertex.essential:
                kept.append(vertex)
                continue
            below, above = lower_of[vertex.id], upper_of[vertex.id]
            if len(below) != 1 or len(above) != 1:
                raise GraphIntegrityError(
                    f"Non-essential vertex {vertex.id} has degree {len(below) + len(above)}",
                    {"vertex": vertex.id},
                )
            first, second = edges[below[0]], edges.pop(above[0])
            edges[first.id] = Edge(first.id, first.lower, second.upper)
            lower_of[second.upper] = [first.id if e == second.id else e for e in lower_of[second.upper]]
        return LeveledGraph(kept, edges.values(), graph.metadata)

    # === Products ===

    def fiber_product(
        self, first: LeveledGraph, second: LeveledGraph, strict: bool = False
    ) -> LeveledGraph:
        """
        Leveled fiber product over the common level range.

        Both graphs are refined at every vertex level in the common range;
        product vertices are pairs of vertices at one level, product edges are
        pairs of edges over one interval. A pair vertex is essential iff either
        factor vertex is. The result is smoothed and renumbered canonically.

        Args:
            first: First factor
            second: Second factor
            strict: Reject levels where both factors have essential vertices

        Returns:
            LeveledGraph: Product with ``coincident_levels`` in its metadata

        Raises:
            LevelError: If the level ranges do not overlap on an open interval,
                or on a coincident level in strict mode
        """
        lo1, hi1 = first.level_range()
        lo2, hi2 = second.level_range()
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo >= hi:
            raise LevelError(
                f"Level ranges [{lo1}, {hi1}] and [{lo2}, {hi2}] do not overlap on an interval",
                {"first": [str(lo1), str(hi1)], "second": [str(lo2), str(hi2)]},
            )

        levels = sorted(
            {t for t in first.levels() + second.levels() if lo <= t <= hi}
        )
        coincident = sorted(
            {first.level(v) for v in first.essential_vertices()}
            & {second.level(v) for v in second.essential_vertices()}
            & set(levels)
        )
        if coincident and strict:
            raise LevelError(
                "Both factors have essential vertices at the same level",
                {"coincident_levels": [format_rational(t) for t in coincident]},
            )
        if coincident:
            logger.warning(
                "fiber_product_coincident_levels",
                levels=[format_rational(t) for t in coincident],
            )

        g1 = self.refine(first, levels)
        g2 = self.refine(second, levels)

        pair_id: Dict[Tuple[int, int], int] = {}
        vertices: List[Vertex] = []
        for level in levels:
            for a, b in product(sorted(g1.vertices_at(level)), sorted(g2.vertices_at(level))):
                pair_id[(a, b)] = len(vertices)
                essential = g1.vertices[a].essential or g2.vertices[b].essential
                vertices.append(Vertex(len(vertices), level, essential))

        by_interval_1 = self._edges_by_interval(g1, lo, hi)
        by_interval_2 = self._edges_by_interval(g2, lo, hi)
        edges: List[Edge] = []
        for span, group in sorted(by_interval_1.items()):
            for e1, e2 in product(group, by_interval_2.get(span, [])):
                edges.append(
                    Edge(
                        len(edges),
                        pair_id[(e1.lower, e2.lower)],
                        pair_id[(e1.upper, e2.upper)],
                    )
                )

        raw = LeveledGraph(vertices, edges)
        result = self.smooth(raw).canonical(
            {"coincident_levels": [format_rational(t) for t in coincident]}
        )
        logger.info(
            "fiber_product_computed",
            vertices=result.num_vertices,
            edges=result.num_edges,
            range=[format_rational(lo), format_rational(hi)],
        )
        return result

    @staticmethod
    def _edges_by_interval(
        graph: LeveledGraph, lo: Fraction, hi: Fraction
    ) -> Dict[Tuple[Fraction, Fraction], List[Edge]]:
        grouped: Dict[Tuple[Fraction, Fraction], List[Edge]] = defaultdict(list)
        for edge in sorted(graph.edges.values(), key=lambda e: e.id):
            span = graph.edge_span(edge.id)
            if lo <= span[0] and span[1] <= hi:
                grouped[span].append(edge)
        return grouped

    # === Invariants ===

    def betti1(self, graph: LeveledGraph) -> int:
        """
        First Betti number ``E − V + 1`` of a connected graph.

        Raises:
            DisconnectedGraphError: If the graph is not connected
        """
        graph.require_connected()
        return graph.num_edges - graph.num_vertices + 1

    def sheet_count(self, graph: LeveledGraph, t: Any) -> int:
        """
        Number of edges whose level span contains ``t``.

        Raises:
            LevelError: If ``t`` is a vertex level
        """
        level = to_fraction(t)
        if graph.vertices_at(level):
            raise LevelError(
                f"Level {format_rational(level)} carries vertices; choose a regular level",
                {"level": format_rational(level)},
            )
        return sum(1 for e in graph.edges if graph.edge_span(e)[0] < level < graph.edge_span(e)[1])

    def regular_levels(self, graph: LeveledGraph) -> List[Fraction]:
        """Midpoints between consecutive vertex levels."""
        levels = graph.levels()
        return [(a + b) / 2 for a, b in zip(levels, levels[1:])]

    def is_isomorphic(
        self,
        first: LeveledGraph,
        second: LeveledGraph,
        mode: str = "plain",
        cap: Optional[int] = None,
    ) -> Tuple[bool, Optional[Dict[int, int]]]:
        """
        Multigraph isomorphism, optionally preserving the order of levels.

        Args:
            first: First graph
            second: Second graph
            mode: "plain" ignores levels; "leveled" matches vertices of equal level rank
            cap: Vertex cap; defaults to the configured isomorphism cap

        Returns:
            Tuple[bool, Optional[Dict[int, int]]]: Verdict and a vertex mapping when isomorphic

        Raises:
            CapacityError: If either graph exceeds the cap
            InvalidParameterError: If the mode is unknown
        """
        if mode not in ("plain", "leveled"):
            raise InvalidParameterError(
                f"Unknown isomorphism mode: {mode}", {"modes": ["plain", "leveled"]}
            )
        cap = cap or self.settings.isomorphism_cap
        size = max(first.num_vertices, second.num_vertices)
        if size > cap:
            raise CapacityError(
                f"Isomorphism test limited to {cap} vertices, got {size}",
                {"cap": cap, "vertices": size},
            )
        if (
            first.num_vertices != second.num_vertices
            or first.num_edges != second.num_edges
            or first.degree_sequence() != second.degree_sequence()
        ):
            return False, None

        g1, g2 = first.to_networkx(), second.to_networkx()
        node_match = None
        if mode == "leveled":
            if len(first.levels()) != len(second.levels()):
                return False, None
            for graph, nxg in ((first, g1), (second, g2)):
                rank = {level: i for i, level in enumerate(graph.levels())}
                for v in nxg.nodes:
                    nxg.nodes[v]["rank"] = rank[graph.level(v)]
            node_match = lambda a, b: a["rank"] == b["rank"]  # noqa: E731

        matcher = MultiGraphMatcher(g1, g2, node_match=node_match)
        if matcher.is_isomorphic():
            return True, dict(sorted(matcher.mapping.items()))
        return False, None


# Singleton instance
_graph_service: GraphService | None = None


def get_graph_service() -> GraphService:
    """
    Get graph service instance (singleton).

    Returns:
        GraphService: Graph service instance
    """
    global _graph_service
    if _graph_service is None:
        _graph_service = GraphService()
    return _graph_service


# Convenience exports
refine = lambda graph, levels: get_graph_service().refine(graph, levels)  # noqa: E731
smooth = lambda graph: get_graph_service().smooth(graph)  # noqa: E731
fiber_product = lambda first, second, **kw: get_graph_service().fiber_product(first, second, **kw)  # noqa: E731
betti1 = lambda graph: get_graph_service().betti1(graph)  # noqa: E731
sheet_count = lambda graph, t: get_graph_service().sheet_count(graph, t)  # noqa: E731
is_isomorphic = lambda first, second, mode="plain", cap=None: get_graph_service().is_isomorphic(  # noqa: E731
    first, second, mode, cap
)
