"""
Schemas package.

Pydantic models for file formats and reports.
"""

from app.schemas.documents import (
    FORMAT_VERSION,
    BandDocument,
    DomainDocument,
    GraphDocument,
    ModelDocument,
    PolynomialSchema,
)
from app.schemas.reports import (
    CertificateResponse,
    ConditionReportResponse,
    DomainCheckResponse,
    ErrorResponse,
    FamilyResultResponse,
    FiberTypeSchema,
    GraphStatsResponse,
    IsomorphismResponse,
    LevelPlanarityResponse,
    PlanarityResponse,
    SliceResponse,
    TransversalityResponse,
)

__all__ = [
    # Documents
    "FORMAT_VERSION",
    "BandDocument",
    "DomainDocument",
    "GraphDocument",
    "ModelDocument",
    "PolynomialSchema",
    # Reports
    "CertificateResponse",
    "ConditionReportResponse",
    "DomainCheckResponse",
    "ErrorResponse",
    "FamilyResultResponse",
    "FiberTypeSchema",
    "GraphStatsResponse",
    "IsomorphismResponse",
    "LevelPlanarityResponse",
    "PlanarityResponse",
    "SliceResponse",
    "TransversalityResponse",
]
