"""
Utilities package.

Exceptions and small helpers shared by every layer.
"""

from app.utils.exceptions import (
    ReebToolkitError,
    InputError,
    DimensionError,
    InvalidParameterError,
    SpecValidationError,
    DomainBuildError,
    UnsupportedDomainError,
    GraphIntegrityError,
    DisconnectedGraphError,
    LevelError,
    ResolutionError,
    NotOnVarietyError,
    ImageError,
    ConditionError,
    CapacityError,
    CertificateError,
)
from app.utils.rationals import to_fraction, format_rational, parse_rational

__all__ = [
    "ReebToolkitError",
    "InputError",
    "DimensionError",
    "InvalidParameterError",
    "SpecValidationError",
    "DomainBuildError",
    "UnsupportedDomainError",
    "GraphIntegrityError",
    "DisconnectedGraphError",
    "LevelError",
    "ResolutionError",
    "NotOnVarietyError",
    "ImageError",
    "ConditionError",
    "CapacityError",
    "CertificateError",
    "to_fraction",
    "format_rational",
    "parse_rational",
]
