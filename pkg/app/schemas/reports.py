"""
Pydantic schemas for reports written by the command line surface.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.algebraic import CertificateReport, FiberType
from app.models.domain import SliceReport, TransversalityReport
from app.models.graph import LeveledGraph
from app.models.planarity import KuratowskiWitness, LevelPlanarityResult, PlanarityResult
from app.models.theorems import ConditionReport, FamilyResult
from app.schemas.documents import (
    FORMAT_VERSION,
    BandDocument,
    DomainDocument,
    GraphDocument,
    Rational,
    rational,
)


# === Base Schemas ===


class BaseReport(BaseModel):
    """Base report model."""

    model_config = ConfigDict(from_attributes=True)

    version: int = FORMAT_VERSION


# === Domain Reports ===


class SampleCheckSchema(BaseModel):
    point: List[Rational]
    active: List[int]
    rank: int
    passed: bool


class TransversalityResponse(BaseReport):
    """Sampled transversality verdict."""

    kind: Literal["transversality_report"] = "transversality_report"
    passed: bool
    samples: List[SampleCheckSchema]
    skipped: List[List[Rational]]
    failing: List[int]
    strata: List[List[int]]

    @classmethod
    def from_model(cls, report: TransversalityReport) -> "TransversalityResponse":
        return cls(
            passed=report.passed,
            samples=[
                SampleCheckSchema(
                    point=[rational(c) for c in s.point],
                    active=list(s.active),
                    rank=s.rank,
                    passed=s.passed,
                )
                for s in report.samples
            ],
            skipped=[[rational(c) for c in p] for p in report.skipped],
            failing=report.failing,
            strata=[list(s) for s in report.strata()],
        )


class PointMembership(BaseModel):
    point: List[Rational]
    membership: str


class DomainCheckResponse(BaseReport):
    """Transversality plus membership of given points."""

    kind: Literal["domain_check"] = "domain_check"
    transversality: TransversalityResponse
    memberships: List[PointMembership] = Field(default_factory=list)


class SliceResponse(BaseReport):
    kind: Literal["slice"] = "slice"
    level: Rational
    count: int
    components: List[List[float]]

    @classmethod
    def from_model(cls, report: SliceReport) -> "SliceResponse":
        return cls(
            level=rational(report.level),
            count=report.count,
            components=[list(c) for c in report.components],
        )


# === Graph Reports ===


class SheetCount(BaseModel):
    level: Rational
    count: int


class GraphStatsResponse(BaseReport):
    """Invariants of a leveled graph."""

    kind: Literal["graph_stats"] = "graph_stats"
    vertices: int
    edges: int
    betti1: int
    degree_sequence: List[int]
    levels: List[Rational]
    sheet_counts: List[SheetCount]


class IsomorphismResponse(BaseReport):
    kind: Literal["isomorphism"] = "isomorphism"
    mode: str
    isomorphic: bool
    mapping: Optional[Dict[int, int]] = None


# === Theorem Reports ===


class ArcSchema(BaseModel):
    label: str
    vertices: List[int]
    edges: List[int]


class ConditionVerdictSchema(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ConditionReportResponse(BaseReport):
    """Hypothesis check outcome."""

    kind: Literal["condition_report"] = "condition_report"
    tag: str
    passed: bool
    conditions: List[ConditionVerdictSchema]
    arcs: List[ArcSchema]
    points: Dict[str, List[int]]
    diagnostics: List[str]
    graph: Optional[GraphDocument] = None

    @classmethod
    def from_model(cls, report: ConditionReport) -> "ConditionReportResponse":
        return cls(
            tag=report.tag.value,
            passed=report.passed,
            conditions=[
                ConditionVerdictSchema(name=c.name, passed=c.passed, detail=c.detail)
                for c in report.conditions
            ],
            arcs=[ArcSchema(label=a.label, vertices=list(a.vertices), edges=list(a.edges)) for a in report.arcs],
            points=dict(report.points),
            diagnostics=list(report.diagnostics),
            graph=GraphDocument.from_model(report.graph) if report.graph is not None else None,
        )


class FoldCountSchema(BaseModel):
    t1: Rational
    t2: Rational
    fold: int


class FamilyResultResponse(BaseReport):
    """One generated family member."""

    kind: Literal["family"] = "family"
    tag: str
    indices: List[int]
    levels: List[Rational]
    reduction: str
    fold_counts: List[FoldCountSchema]
    manifold_dimension: int
    auxiliary_levels: Dict[str, Rational]
    factor: BandDocument
    domain: DomainDocument
    prediction: GraphDocument
    report: Optional[ConditionReportResponse] = None

    @classmethod
    def from_model(cls, result: FamilyResult) -> "FamilyResultResponse":
        return cls(
            tag=result.tag.value,
            indices=list(result.indices),
            levels=[rational(t) for t in result.levels],
            reduction=result.reduction.value,
            fold_counts=[
                FoldCountSchema(t1=rational(f.t1), t2=rational(f.t2), fold=f.fold)
                for f in result.fold_counts
            ],
            manifold_dimension=result.manifold_dimension,
            auxiliary_levels={k: rational(v) for k, v in sorted(result.auxiliary_levels.items())},
            factor=BandDocument.from_model(result.factor),
            domain=DomainDocument.from_model(result.domain),
            prediction=GraphDocument.from_model(result.prediction),
            report=ConditionReportResponse.from_model(result.report) if result.report else None,
        )


# === Planarity Reports ===


class WitnessSchema(BaseModel):
    kind: str
    branch_vertices: List[int]
    paths: List[List[int]]

    @classmethod
    def from_model(cls, witness: KuratowskiWitness) -> "WitnessSchema":
        return cls(
            kind=witness.kind.value,
            branch_vertices=list(witness.branch_vertices),
            paths=[list(p) for p in witness.paths],
        )


class PlanarityResponse(BaseReport):
    kind: Literal["planarity"] = "planarity"
    planar: bool
    faces: Optional[int] = None
    rotation_system: Optional[Dict[int, List[int]]] = None
    witness: Optional[WitnessSchema] = None

    @classmethod
    def from_model(cls, result: PlanarityResult) -> "PlanarityResponse":
        return cls(
            planar=result.planar,
            faces=result.faces,
            rotation_system=(
                {v: list(n) for v, n in sorted(result.rotation_system.items())}
                if result.rotation_system is not None
                else None
            ),
            witness=WitnessSchema.from_model(result.witness) if result.witness else None,
        )


class LevelOrder(BaseModel):
    level: Rational
    order: List[int]


class LevelPlanarityResponse(BaseReport):
    kind: Literal["level_planarity"] = "level_planarity"
    level_planar: bool
    orders: List[LevelOrder] = Field(default_factory=list)
    inversions: Optional[int] = None
    refined: Optional[GraphDocument] = None

    @classmethod
    def from_model(cls, result: LevelPlanarityResult, inversions: Optional[int] = None) -> "LevelPlanarityResponse":
        embedding = result.embedding
        if embedding is None:
            return cls(level_planar=result.level_planar)
        return cls(
            level_planar=result.level_planar,
            orders=[LevelOrder(level=rational(t), order=list(o)) for t, o in embedding.orders],
            inversions=inversions,
            refined=GraphDocument.from_model(embedding.graph),
        )


# === Algebraic Reports ===


class SphereFactorSchema(BaseModel):
    block: int
    dimension: int
    radius_squared: Rational


class FiberTypeSchema(BaseModel):
    kind: str
    dimension: int
    factors: List[SphereFactorSchema]

    @classmethod
    def from_model(cls, fiber: FiberType) -> "FiberTypeSchema":
        return cls(
            kind=fiber.kind.value,
            dimension=fiber.dimension,
            factors=[
                SphereFactorSchema(block=f.block, dimension=f.dimension, radius_squared=rational(f.radius_squared))
                for f in fiber.factors
            ],
        )


class CertificateResponse(BaseReport):
    """Rank, fiber dimension and emptiness certificates."""

    kind: Literal["certificate_report"] = "certificate_report"
    passed: bool
    rank_ok: bool
    fiber_dimension_ok: bool
    emptiness_ok: bool
    expected_rank: int
    expected_fiber_dimension: int
    strict_boundary_drop: bool
    interior_ranks: List[int]
    boundary_ranks: List[int]
    interior_fiber_dimensions: List[int]
    boundary_fiber_dimensions: List[int]
    outside_empty: List[bool]

    @classmethod
    def from_model(cls, report: CertificateReport) -> "CertificateResponse":
        return cls(
            passed=report.passed,
            rank_ok=report.rank_ok,
            fiber_dimension_ok=report.fiber_dimension_ok,
            emptiness_ok=report.emptiness_ok,
            expected_rank=report.expected_rank,
            expected_fiber_dimension=report.expected_fiber_dimension,
            strict_boundary_drop=report.strict_boundary_drop,
            interior_ranks=report.interior_ranks,
            boundary_ranks=report.boundary_ranks,
            interior_fiber_dimensions=report.interior_fiber_dimensions,
            boundary_fiber_dimensions=report.boundary_fiber_dimensions,
            outside_empty=report.outside_empty,
        )


# === Error Schemas ===


class ErrorResponse(BaseModel):
    """Error response schema."""

    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Human-readable error message")
    details: Dict[str, Any] = Field(default_factory=dict)


def graph_stats(
    graph: LeveledGraph, betti1: int, sheet_counts: List[SheetCount]
) -> GraphStatsResponse:
    return GraphStatsResponse(
        vertices=graph.num_vertices,
        edges=graph.num_edges,
        betti1=betti1,
        degree_sequence=graph.degree_sequence(),
        levels=[rational(t) for t in graph.levels()],
        sheet_counts=sheet_counts,
    )
