"""
Domain entities.

Immutable value objects shared by the services.
"""

from app.models.polynomial import (
    Polynomial,
    RationalPoint,
    Orientation,
    CircleShape,
    make_point,
    sphere_poly,
    evaluate,
    gradient,
    substitute_coords,
)
from app.models.domain import (
    Ball,
    Band,
    BandSpec,
    Membership,
    NCDomain,
    SampleCheck,
    SingularLevel,
    SliceReport,
    TransversalityReport,
    WHOLE_SPACE,
)
from app.models.graph import Edge, LeveledGraph, Vertex
from app.models.theorems import (
    Arc,
    ConditionReport,
    ConditionVerdict,
    FamilyResult,
    FoldCount,
    Reduction,
    TheoremTag,
)
from app.models.planarity import (
    KuratowskiKind,
    KuratowskiWitness,
    LevelEmbedding,
    LevelPlanarityResult,
    PlanarityResult,
)
from app.models.algebraic import (
    AlgebraicModel,
    CertificateReport,
    DimensionPolicy,
    FiberKind,
    FiberSample,
    FiberType,
    SphereFactor,
)

__all__ = [
    "Polynomial",
    "RationalPoint",
    "Orientation",
    "CircleShape",
    "make_point",
    "sphere_poly",
    "evaluate",
    "gradient",
    "substitute_coords",
    "Ball",
    "Band",
    "BandSpec",
    "Membership",
    "NCDomain",
    "SampleCheck",
    "SingularLevel",
    "SliceReport",
    "TransversalityReport",
    "WHOLE_SPACE",
    "Edge",
    "LeveledGraph",
    "Vertex",
    "Arc",
    "ConditionReport",
    "ConditionVerdict",
    "FamilyResult",
    "FoldCount",
    "Reduction",
    "TheoremTag",
    "KuratowskiKind",
    "KuratowskiWitness",
    "LevelEmbedding",
    "LevelPlanarityResult",
    "PlanarityResult",
    "AlgebraicModel",
    "CertificateReport",
    "DimensionPolicy",
    "FiberKind",
    "FiberSample",
    "FiberType",
    "SphereFactor",
]
