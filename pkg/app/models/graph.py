"""
Leveled multigraphs.

Finite multigraphs with a rational level per vertex and edges strictly
increasing in level. Reeb graphs and their fiber products are stored this way.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.utils.exceptions import DisconnectedGraphError, GraphIntegrityError
from app.utils.rationals import to_fraction


@dataclass(frozen=True)
class Vertex:
    id: int
    level: Fraction
    essential: bool = True


@dataclass(frozen=True)
class Edge:
    id: int
    lower: int
    upper: int


class LeveledGraph:
    """
    Immutable leveled multigraph.

    Invariants checked on construction:
        - edge endpoints exist and ``level(lower) < level(upper)``
        - a non-essential vertex has exactly one lower and one upper edge
    """

    __slots__ = ("_vertices", "_edges", "_lower", "_upper", "_metadata")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Iterable[Edge],
        metadata: Mapping[str, Any] | None = None,
    ):
        """
        Initialize graph and validate its invariants.

        Args:
            vertices: Vertices with unique ids
            edges: Edges with unique ids
            metadata: JSON-friendly annotations (e.g. coincident levels)

        Raises:
            GraphIntegrityError: Listing every violated invariant
        """
        self._vertices: Dict[int, Vertex] = {}
        self._edges: Dict[int, Edge] = {}
        problems: List[str] = []
        for vertex in sorted(vertices, key=lambda v: v.id):
            if vertex.id in self._vertices:
                problems.append(f"vertex {vertex.id}: duplicate id")
            self._vertices[vertex.id] = vertex
        for edge in sorted(edges, key=lambda e: e.id):
            if edge.id in self._edges:
                problems.append(f"edge {edge.id}: duplicate id")
            self._edges[edge.id] = edge
        self._lower: Dict[int, List[int]] = defaultdict(list)
        self._upper: Dict[int, List[int]] = defaultdict(list)
        for edge in self._edges.values():
            if edge.lower not in self._vertices or edge.upper not in self._vertices:
                problems.append(f"edge {edge.id}: endpoint missing")
                continue
            if self._vertices[edge.lower].level >= self._vertices[edge.upper].level:
                problems.append(
                    f"edge {edge.id}: level of lower vertex {edge.lower} is not below "
                    f"level of upper vertex {edge.upper}"
                )
            # edges leaving a vertex upward / arriving from below
            self._upper[edge.lower].append(edge.id)
            self._lower[edge.upper].append(edge.id)
        for vertex in self._vertices.values():
            if not vertex.essential and (
                len(self._lower[vertex.id]) != 1 or len(self._upper[vertex.id]) != 1
            ):
                problems.append(
                    f"vertex {vertex.id}: non-essential vertex needs one lower and one upper edge"
                )
        if problems:
            raise GraphIntegrityError("Leveled graph invariants violated", {"violations": problems})
        self._metadata = MappingProxyType(dict(metadata or {}))

    # === Constructors ===

    @classmethod
    def from_lists(
        cls,
        vertices: Sequence[Tuple[int, Any] | Tuple[int, Any, bool]],
        edges: Sequence[Tuple[int, int, int] | Tuple[int, int]],
        metadata: Mapping[str, Any] | None = None,
    ) -> "LeveledGraph":
        """
        Build from plain tuples.

        Vertices are ``(id, level)`` or ``(id, level, essential)``. Edges are
        ``(id, u, v)`` or ``(u, v)``; endpoints are oriented by level.
        """
        verts = [
            Vertex(int(v[0]), to_fraction(v[1]), bool(v[2]) if len(v) > 2 else True)
            for v in vertices
        ]
        levels = {v.id: v.level for v in verts}
        built = []
        for index, e in enumerate(edges):
            if len(e) == 3:
                eid, u, w = e
            else:
                eid, (u, w) = index, e
            if u in levels and w in levels and levels[u] > levels[w]:
                u, w = w, u
            built.append(Edge(int(eid), int(u), int(w)))
        return cls(verts, built, metadata)

    @classmethod
    def path(cls, levels: Sequence[Any]) -> "LeveledGraph":
        """Monotone path through the given increasing levels."""
        return cls.from_lists(
            [(i, level) for i, level in enumerate(levels)],
            [(i, i, i + 1) for i in range(len(levels) - 1)],
        )

    # === Accessors ===

    @property
    def vertices(self) -> Mapping[int, Vertex]:
        return MappingProxyType(self._vertices)

    @property
    def edges(self) -> Mapping[int, Edge]:
        return MappingProxyType(self._edges)

    @property
    def metadata(self) -> Mapping[str, Any]:
        return self._metadata

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def level(self, vertex_id: int) -> Fraction:
        return self._vertices[vertex_id].level

    def lower_edges(self, vertex_id: int) -> List[int]:
        """Edges arriving at the vertex from below."""
        return list(self._lower.get(vertex_id, []))

    def upper_edges(self, vertex_id: int) -> List[int]:
        """Edges leaving the vertex upward."""
        return list(self._upper.get(vertex_id, []))

    def degree(self, vertex_id: int) -> int:
        return len(self._lower.get(vertex_id, [])) + len(self._upper.get(vertex_id, []))

    def degree_sequence(self) -> List[int]:
        return sorted((self.degree(v) for v in self._vertices), reverse=True)

    def levels(self) -> List[Fraction]:
        """Distinct vertex levels in increasing order."""
        return sorted({v.level for v in self._vertices.values()})

    def level_range(self) -> Tuple[Fraction, Fraction]:
        levels = self.levels()
        if not levels:
            raise GraphIntegrityError("Empty graph has no level range")
        return levels[0], levels[-1]

    def vertices_at(self, level: Fraction) -> List[int]:
        return [v.id for v in self._vertices.values() if v.level == level]

    def essential_vertices(self) -> List[int]:
        return [v.id for v in self._vertices.values() if v.essential]

    def edge_span(self, edge_id: int) -> Tuple[Fraction, Fraction]:
        edge = self._edges[edge_id]
        return self.level(edge.lower), self.level(edge.upper)

    def next_ids(self) -> Tuple[int, int]:
        """Smallest unused non-negative vertex and edge ids."""
        return (
            max(self._vertices, default=-1) + 1,
            max(self._edges, default=-1) + 1,
        )

    # === Structure ===

    def to_networkx(self) -> nx.MultiGraph:
        """Undirected multigraph keyed by edge id, with level and essential attributes."""
        graph = nx.MultiGraph()
        for vertex in self._vertices.values():
            graph.add_node(vertex.id, level=vertex.level, essential=vertex.essential)
        for edge in self._edges.values():
            graph.add_edge(edge.lower, edge.upper, key=edge.id)
        return graph

    def components(self) -> List[List[int]]:
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))

    def is_connected(self) -> bool:
        return len(self._vertices) > 0 and len(self.components()) == 1

    def require_connected(self) -> None:
        """
        Raises:
            DisconnectedGraphError: Naming every component
        """
        components = self.components()
        if len(components) != 1:
            raise DisconnectedGraphError(
                f"Graph has {len(components)} connected components", components
            )

    def canonical(self, metadata: Optional[Mapping[str, Any]] = None) -> "LeveledGraph":
        """
        Renumber vertices by (level, old id) and edges by endpoints.

        Args:
            metadata: Replacement metadata; the current metadata is kept if None
        """
        order = sorted(self._vertices.values(), key=lambda v: (v.level, v.id))
        new_id = {v.id: i for i, v in enumerate(order)}
        vertices = [Vertex(new_id[v.id], v.level, v.essential) for v in order]
        edge_order = sorted(
            self._edges.values(), key=lambda e: (new_id[e.lower], new_id[e.upper], e.id)
        )
        edges = [Edge(i, new_id[e.lower], new_id[e.upper]) for i, e in enumerate(edge_order)]
        return LeveledGraph(vertices, edges, self._metadata if metadata is None else metadata)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeveledGraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._edges == other._edges
            and dict(self._metadata) == dict(other._metadata)
        )

    def __repr__(self) -> str:
        return f"LeveledGraph(V={self.num_vertices}, E={self.num_edges})"
