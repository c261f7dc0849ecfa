"""
Planarity certificates.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.models.graph import LeveledGraph


class KuratowskiKind(str, Enum):
    K5 = "K5"
    K33 = "K33"


@dataclass(frozen=True)
class KuratowskiWitness:
    """
    Subdivision of K5 or K3,3.

    For K33 the first three branch vertices form one side.
    """

    kind: KuratowskiKind
    branch_vertices: Tuple[int, ...]
    paths: Tuple[Tuple[int, ...], ...]

    @property
    def sides(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if self.kind is not KuratowskiKind.K33:
            return None
        return self.branch_vertices[:3], self.branch_vertices[3:]


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation_system: Optional[Dict[int, List[int]]] = None
    faces: Optional[int] = None
    witness: Optional[KuratowskiWitness] = None


@dataclass(frozen=True)
class LevelEmbedding:
    """Vertex order per level of a proper refinement."""

    graph: LeveledGraph
    orders: Tuple[Tuple[Fraction, Tuple[int, ...]], ...]

    def order_map(self) -> Dict[Fraction, Tuple[int, ...]]:
        return dict(self.orders)


@dataclass(frozen=True)
class LevelPlanarityResult:
    level_planar: bool
    embedding: Optional[LevelEmbedding] = None
