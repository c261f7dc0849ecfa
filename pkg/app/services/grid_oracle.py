"""
Grid oracle for Reeb graphs of ``x1`` on 2-D and 3-D domain closures.

Independent of the exact sweep: the bounding box is cut into cells, each
x1-slab is labelled into connected components, and components of adjacent
slabs are linked through shared faces.
"""

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind
from scipy import ndimage

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.domain import NCDomain
from app.models.graph import Edge, LeveledGraph, Vertex
from app.services.domain_service import get_domain_service
from app.utils.exceptions import DimensionError, InvalidParameterError, ResolutionError
from app.utils.rationals import format_rational

logger = get_logger(__name__)

Piece = Tuple[int, int]


class GridOracle:
    """Discretised Reeb graph computation."""

    def __init__(self):
        """Initialize grid oracle."""
        self.settings = get_settings()
        self.domains = get_domain_service()

    def reeb_grid_oracle(
        self,
        domain: NCDomain,
        box: Optional[Sequence[Tuple[float, float]]] = None,
        resolution: Optional[int] = None,
    ) -> LeveledGraph:
        """
        Reeb graph of ``x1`` from a cell decomposition of a bounding box.

        Args:
            domain: Domain of dimension 2 or 3
            box: (low, high) per axis containing the closure; derived from the
                constraint circles when omitted
            resolution: Cells per axis; configured default per dimension

        Returns:
            LeveledGraph: Graph with every vertex essential and levels snapped
                to exact circle extremes where one lies within the window

        Raises:
            DimensionError: For ambient dimension outside {2, 3}
            InvalidParameterError: For a resolution below the floor
            ResolutionError: When snapping is ambiguous or reverses an edge
        """
        k = domain.ambient_dim
        if k not in (2, 3):
            raise DimensionError(f"Grid oracle supports dimensions 2 and 3, got {k}")
        if resolution is None:
            resolution = (
                self.settings.grid_resolution_2d if k == 2 else self.settings.grid_resolution_3d
            )
        if resolution < self.settings.grid_min_resolution:
            raise InvalidParameterError(
                f"Resolution {resolution} is below the floor {self.settings.grid_min_resolution}"
            )
        box = list(box) if box is not None else self.domains.default_box(domain)
        if len(box) != k:
            raise DimensionError(f"Box has {len(box)} axes, domain has {k}")

        steps = [(hi - lo) / resolution for lo, hi in box]
        dilation = self.settings.grid_eps_factor * math.sqrt(sum(h * h for h in steps))
        mask = self._mark_cells(domain, box, resolution, dilation)

        labels: List[np.ndarray] = []
        counts: List[int] = []
        for s in range(resolution):
            labelled, count = ndimage.label(mask[s])
            labels.append(labelled)
            counts.append(count)

        chains = UnionFind()
        events: List[float] = []
        starts: Dict[Piece, int] = {}
        ends: Dict[Piece, int] = {}
        lo0, h0 = box[0][0], steps[0]
        for boundary in range(resolution + 1):
            below = boundary - 1
            links = nx.Graph()
            if below >= 0:
                links.add_nodes_from((below, n) for n in range(1, counts[below] + 1))
            if boundary < resolution:
                links.add_nodes_from((boundary, n) for n in range(1, counts[boundary] + 1))
            if 0 <= below and boundary < resolution:
                links.add_edges_from(self._links(labels[below], labels[boundary], below))
            for group in nx.connected_components(links):
                lower = sorted(p for p in group if p[0] == below)
                upper = sorted(p for p in group if p[0] == boundary)
                if len(lower) == 1 and len(upper) == 1:
                    chains.union(lower[0], upper[0])
                    continue
                event = len(events)
                events.append(lo0 + boundary * h0)
                for piece in lower:
                    ends[piece] = event
                for piece in upper:
                    starts[piece] = event

        chain_start: Dict[Piece, int] = {}
        chain_end: Dict[Piece, int] = {}
        for piece, event in starts.items():
            chain_start[chains[piece]] = event
        for piece, event in ends.items():
            chain_end[chains[piece]] = event
        raw_edges = [(chain_start[root], chain_end[root]) for root in sorted(chain_start)]

        levels = self._snap(domain, events, h0, dilation)
        graph = self._contract(levels, raw_edges)
        logger.info(
            "reeb_graph_computed",
            method="grid",
            resolution=resolution,
            events=len(events),
            vertices=graph.num_vertices,
            edges=graph.num_edges,
        )
        return graph

    def _mark_cells(
        self,
        domain: NCDomain,
        box: Sequence[Tuple[float, float]],
        resolution: int,
        dilation: float,
    ) -> np.ndarray:
        """Cells whose center satisfies every constraint up to the dilation."""
        axes = [
            lo + (np.arange(resolution) + 0.5) * (hi - lo) / resolution for lo, hi in box
        ]
        coords = np.meshgrid(*axes, indexing="ij")
        polys = list(domain.constraints)
        polys += [ball.as_polynomial(domain.ambient_dim) for ball in domain.neighborhood]
        mask = np.ones(coords[0].shape, dtype=bool)
        for poly in polys:
            mask &= poly.evaluate_array(coords) + dilation * poly.gradient_norm_array(coords) >= 0
        return mask

    @staticmethod
    def _links(lower: np.ndarray, upper: np.ndarray, slab: int) -> List[Tuple[Piece, Piece]]:
        shared = (lower > 0) & (upper > 0)
        if not shared.any():
            return []
        pairs = np.unique(np.stack([lower[shared], upper[shared]], axis=1), axis=0)
        return [((slab, int(a)), (slab + 1, int(b))) for a, b in pairs]

    def _snap(
        self, domain: NCDomain, events: List[float], h0: float, dilation: float
    ) -> List[Fraction]:
        candidates = self.domains.candidate_levels(domain)
        window = self.settings.grid_snap_slabs * h0 + dilation
        levels = []
        for x in events:
            near = [c for c in candidates if abs(float(c) - x) <= window]
            if len(near) > 1:
                raise ResolutionError(
                    f"Event at {x:.6f} is within {window:.6f} of several critical levels; "
                    "increase the resolution",
                    {"event": x, "candidates": [format_rational(c) for c in near]},
                )
            levels.append(near[0] if near else Fraction(x).limit_denominator(10**6))
        return levels

    @staticmethod
    def _contract(levels: List[Fraction], raw_edges: List[Tuple[int, int]]) -> LeveledGraph:
        """Merge events joined by an edge whose ends snapped to one level."""
        merged = UnionFind(range(len(levels)))
        for a, b in raw_edges:
            if levels[a] == levels[b]:
                merged.union(a, b)
        vertices = {merged[v]: Vertex(merged[v], levels[v]) for v in range(len(levels))}
        edges = []
        for a, b in raw_edges:
            ra, rb = merged[a], merged[b]
            if ra == rb:
                continue
            if levels[ra] > levels[rb]:
                raise ResolutionError(
                    "Snapping reversed the order of two events; increase the resolution",
                    {"levels": [format_rational(levels[ra]), format_rational(levels[rb])]},
                )
            edges.append(Edge(len(edges), ra, rb))
        return LeveledGraph(vertices.values(), edges).canonical()


# Singleton instance
_grid_oracle: GridOracle | None = None


def get_grid_oracle() -> GridOracle:
    """
    Get grid oracle instance (singleton).

    Returns:
        GridOracle: Grid oracle instance
    """
    global _grid_oracle
    if _grid_oracle is None:
        _grid_oracle = GridOracle()
    return _grid_oracle


# Convenience exports
reeb_grid_oracle = lambda domain, box=None, resolution=None: get_grid_oracle().reeb_grid_oracle(  # noqa: E731
    domain, box, resolution
)
