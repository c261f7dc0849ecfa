"""
Pydantic schemas for the toolkit's file formats.

Every document carries a ``kind`` header and a ``version`` field. Rationals
are stored as canonical "num/den" strings.
"""

from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple

from pydantic import AfterValidator, BaseModel, ConfigDict, Field

from app.models.algebraic import AlgebraicModel, DimensionPolicy
from app.models.domain import Ball, Band, BandSpec, NCDomain
from app.models.graph import Edge, LeveledGraph, Vertex
from app.models.polynomial import Polynomial
from app.utils.exceptions import ReebToolkitError
from app.utils.rationals import format_rational, to_fraction

FORMAT_VERSION = 1


def _canonical_rational(value: str) -> str:
    try:
        return format_rational(to_fraction(value))
    except ReebToolkitError as e:
        raise ValueError(e.message) from e


Rational = Annotated[str, AfterValidator(_canonical_rational)]


def rational(value: Any) -> str:
    return format_rational(to_fraction(value))


# === Base Schemas ===


class BaseDocument(BaseModel):
    """Base document model."""

    model_config = ConfigDict(extra="forbid")

    version: int = Field(default=FORMAT_VERSION, description="Format version")

    def violations(self) -> List[str]:
        """Invariant violations beyond the structural schema, addressed by field path."""
        return []


# === Polynomial Schemas ===


class TermSchema(BaseModel):
    """One monomial with its coefficient."""

    model_config = ConfigDict(extra="forbid")

    exponents: List[int]
    coefficient: Rational


class PolynomialSchema(BaseModel):
    """Sparse polynomial in canonical term order."""

    model_config = ConfigDict(extra="forbid")

    num_vars: int = Field(..., ge=1)
    terms: List[TermSchema]

    @classmethod
    def from_model(cls, poly: Polynomial) -> "PolynomialSchema":
        return cls(
            num_vars=poly.num_vars,
            terms=[
                TermSchema(exponents=list(exps), coefficient=rational(coeff))
                for exps, coeff in poly.sorted_terms()
            ],
        )

    def violations(self, path: str) -> List[str]:
        problems = []
        for index, term in enumerate(self.terms):
            if len(term.exponents) != self.num_vars:
                problems.append(
                    f"{path}.terms[{index}]: {len(term.exponents)} exponents for {self.num_vars} variables"
                )
            if any(e < 0 for e in term.exponents):
                problems.append(f"{path}.terms[{index}]: negative exponent")
        return problems

    def to_model(self) -> Polynomial:
        return Polynomial(
            self.num_vars,
            {tuple(term.exponents): to_fraction(term.coefficient) for term in self.terms},
        )


# === Domain Schemas ===


class BallSchema(BaseModel):
    """Open ball or cylinder over one."""

    model_config = ConfigDict(extra="forbid")

    axes: List[int]
    center: List[Rational]
    radius: Rational

    @classmethod
    def from_model(cls, ball: Ball) -> "BallSchema":
        return cls(
            axes=list(ball.axes),
            center=[rational(c) for c in ball.center],
            radius=rational(ball.radius),
        )

    def to_model(self) -> Ball:
        return Ball(
            tuple(self.axes),
            tuple(to_fraction(c) for c in self.center),
            to_fraction(self.radius),
        )


class DomainDocument(BaseDocument):
    """Domain spec file."""

    kind: Literal["domain"] = "domain"
    ambient_dim: int = Field(..., ge=2)
    constraints: List[PolynomialSchema] = Field(..., min_length=1)
    neighborhood: List[BallSchema] = Field(default_factory=list)
    provenance: Optional[str] = None
    intended_intersections: List[Tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_model(cls, domain: NCDomain) -> "DomainDocument":
        return cls(
            ambient_dim=domain.ambient_dim,
            constraints=[PolynomialSchema.from_model(p) for p in domain.constraints],
            neighborhood=[BallSchema.from_model(b) for b in domain.neighborhood],
            provenance=domain.provenance,
            intended_intersections=sorted(domain.intended_intersections),
        )

    def violations(self) -> List[str]:
        problems = []
        for index, poly in enumerate(self.constraints):
            path = f"constraints[{index}]"
            if poly.num_vars != self.ambient_dim:
                problems.append(f"{path}: {poly.num_vars} variables, expected {self.ambient_dim}")
            problems.extend(poly.violations(path))
        for index, ball in enumerate(self.neighborhood):
            if len(ball.axes) != len(ball.center):
                problems.append(f"neighborhood[{index}]: center needs one coordinate per axis")
            if any(not 0 <= a < self.ambient_dim for a in ball.axes):
                problems.append(f"neighborhood[{index}]: axes {ball.axes} outside the ambient space")
            if to_fraction(ball.radius) <= 0:
                problems.append(f"neighborhood[{index}]: radius must be positive")
        for index, (i, j) in enumerate(self.intended_intersections):
            if not 0 <= i < j < len(self.constraints):
                problems.append(f"intended_intersections[{index}]: ({i}, {j}) is not an ordered index pair")
        return problems

    def to_model(self) -> NCDomain:
        return NCDomain(
            ambient_dim=self.ambient_dim,
            constraints=tuple(p.to_model() for p in self.constraints),
            neighborhood=tuple(b.to_model() for b in self.neighborhood),
            provenance=self.provenance,
            intended_intersections=frozenset(tuple(pair) for pair in self.intended_intersections),
        )


# === Band Schemas ===


class BandSchema(BaseModel):
    """One band of a band spec."""

    model_config = ConfigDict(extra="forbid")

    t1: Rational
    t2: Rational
    holes: int


class BandDocument(BaseDocument):
    """Band spec file."""

    kind: Literal["band"] = "band"
    bands: List[BandSchema]
    outer_center: Tuple[Rational, Rational]
    outer_radius: Rational
    stagger: bool = False

    @classmethod
    def from_model(cls, spec: BandSpec) -> "BandDocument":
        return cls(
            bands=[
                BandSchema(t1=rational(b.t1), t2=rational(b.t2), holes=b.holes) for b in spec.bands
            ],
            outer_center=(rational(spec.outer_center[0]), rational(spec.outer_center[1])),
            outer_radius=rational(spec.outer_radius),
            stagger=spec.stagger,
        )

    def violations(self) -> List[str]:
        return self._spec().violations()

    def _spec(self) -> BandSpec:
        return BandSpec(
            bands=tuple(Band(to_fraction(b.t1), to_fraction(b.t2), b.holes) for b in self.bands),
            outer_center=(to_fraction(self.outer_center[0]), to_fraction(self.outer_center[1])),
            outer_radius=to_fraction(self.outer_radius),
            stagger=self.stagger,
        )

    def to_model(self) -> BandSpec:
        return BandSpec.create(
            [(b.t1, b.t2, b.holes) for b in self.bands],
            self.outer_center,
            self.outer_radius,
            self.stagger,
        )


# === Graph Schemas ===


class VertexSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    level: Rational
    essential: bool = True


class EdgeSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    lower: int
    upper: int


class GraphDocument(BaseDocument):
    """Leveled graph file."""

    kind: Literal["graph"] = "graph"
    vertices: List[VertexSchema]
    edges: List[EdgeSchema]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_model(cls, graph: LeveledGraph) -> "GraphDocument":
        return cls(
            vertices=[
                VertexSchema(id=v.id, level=rational(v.level), essential=v.essential)
                for v in graph.vertices.values()
            ],
            edges=[EdgeSchema(id=e.id, lower=e.lower, upper=e.upper) for e in graph.edges.values()],
            metadata=dict(graph.metadata),
        )

    def to_model(self) -> LeveledGraph:
        return LeveledGraph(
            [Vertex(v.id, to_fraction(v.level), v.essential) for v in self.vertices],
            [Edge(e.id, e.lower, e.upper) for e in self.edges],
            self.metadata,
        )


# === Model Schemas ===


class LayoutRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    block: str
    start: int
    size: int


class ModelDocument(BaseDocument):
    """Emitted algebraic model file."""

    kind: Literal["model"] = "model"
    domain: DomainDocument
    m: int
    dims: List[int]
    policy: DimensionPolicy
    layout: List[LayoutRow]
    system: List[PolynomialSchema]

    @classmethod
    def from_model(cls, model: AlgebraicModel) -> "ModelDocument":
        return cls(
            domain=DomainDocument.from_model(model.domain),
            m=model.m,
            dims=list(model.dims),
            policy=model.policy,
            layout=[LayoutRow(block=name, start=start, size=size) for name, start, size in model.layout()],
            system=[PolynomialSchema.from_model(F) for F in model.system],
        )

    def violations(self) -> List[str]:
        problems = [f"domain.{p}" for p in self.domain.violations()]
        k, l = self.domain.ambient_dim, len(self.domain.constraints)  # noqa: E741
        if len(self.dims) != l:
            problems.append(f"dims: {len(self.dims)} blocks for {l} constraints")
        if any(d < 1 for d in self.dims):
            problems.append("dims: every block needs at least one coordinate")
        if sum(self.dims) != self.m + l - k:
            problems.append(f"dims: sum {sum(self.dims)} differs from m + l - k = {self.m + l - k}")
        if len(self.system) != l:
            problems.append(f"system: {len(self.system)} polynomials for {l} constraints")
        for index, poly in enumerate(self.system):
            if poly.num_vars != self.m + l:
                problems.append(f"system[{index}]: {poly.num_vars} variables, expected {self.m + l}")
            problems.extend(poly.violations(f"system[{index}]"))
        return problems

    def to_model(self) -> AlgebraicModel:
        return AlgebraicModel(
            domain=self.domain.to_model(),
            m=self.m,
            dims=tuple(self.dims),
            system=tuple(p.to_model() for p in self.system),
            policy=self.policy,
        )
