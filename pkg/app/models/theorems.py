"""
Hypothesis reports and family results for the covering constructions.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph


class TheoremTag(str, Enum):
    MT1 = "mt1"
    MT2 = "mt2"
    MT3 = "mt3"
    THM2 = "thm2"


class Reduction(str, Enum):
    """Middle band offset reductions licensed for the K5 family."""

    NONE = "none"
    C = "C"
    B = "B"
    BC = "BC"

    @property
    def middle_offset(self) -> int:
        return {"none": 8, "C": 6, "B": 5, "BC": 4}[self.value]


@dataclass(frozen=True)
class Arc:
    """Embedded arc of a refined graph: alternating vertex and edge ids."""

    label: str
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class ConditionVerdict:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ConditionReport:
    """
    Outcome of a hypothesis check.

    Arcs refer to vertex ids of ``graph``, the input refined at the
    checked levels; points are its vertices at those levels.
    """

    tag: TheoremTag
    conditions: List[ConditionVerdict] = field(default_factory=list)
    arcs: List[Arc] = field(default_factory=list)
    points: Dict[str, List[int]] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    graph: Optional[LeveledGraph] = None

    @property
    def passed(self) -> bool:
        return bool(self.conditions) and all(c.passed for c in self.conditions)

    def verdict(self, name: str) -> Optional[ConditionVerdict]:
        for condition in self.conditions:
            if condition.name == name:
                return condition
        return None

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.conditions.append(ConditionVerdict(name, passed, detail))
        if not passed and detail:
            self.diagnostics.append(f"{name}: {detail}")
        return passed


@dataclass(frozen=True)
class FoldCount:
    """Covering degree of the prediction over one factor band."""

    t1: Fraction
    t2: Fraction
    fold: int


@dataclass
class FamilyResult:
    """One member of a generated graph family."""

    tag: TheoremTag
    indices: Tuple[int, ...]
    levels: Tuple[Fraction, Fraction]
    factor: BandSpec
    domain: NCDomain
    prediction: LeveledGraph
    fold_counts: List[FoldCount]
    manifold_dimension: int
    reduction: Reduction = Reduction.NONE
    auxiliary_levels: Dict[str, Fraction] = field(default_factory=dict)
    report: Optional[ConditionReport] = None
