"""
Custom exceptions for the toolkit.

Provides specific exceptions for different error scenarios. Every exception
carries a human readable message plus a ``details`` mapping that the command
line surface prints in structured form.
"""

from typing import Any, Dict, List


class ReebToolkitError(Exception):
    """Base exception for all toolkit errors."""

    exit_code: int = 2

    def __init__(self, message: str, details: Dict[str, Any] | None = None):
        """
        Initialize exception.

        Args:
            message: Error message
            details: Additional error details
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class InputError(ReebToolkitError):
    """Base exception for invalid input (exit code 2)."""

    pass


class DimensionError(InputError):
    """Raised when a point or polynomial has the wrong number of coordinates."""

    pass


class InvalidParameterError(InputError):
    """Raised when a numeric parameter is out of its documented range."""

    pass


class SpecValidationError(InputError):
    """Raised when a spec file violates its schema or invariants."""

    def __init__(self, message: str, violations: List[str]):
        """
        Initialize spec validation error.

        Args:
            message: Error message
            violations: Every violation found, each addressed by field path
        """
        super().__init__(message, {"violations": list(violations)})
        self.violations = list(violations)


class DomainBuildError(InputError):
    """Raised when a domain builder cannot realise its parameters."""

    pass


class UnsupportedDomainError(InputError):
    """Raised when an exact routine meets a constraint shape it cannot handle."""

    pass


class GraphIntegrityError(InputError):
    """Raised when a leveled graph breaks one of its invariants."""

    pass


class DisconnectedGraphError(GraphIntegrityError):
    """Raised when a connected graph is required."""

    def __init__(self, message: str, components: List[List[int]]):
        """
        Initialize disconnected graph error.

        Args:
            message: Error message
            components: Vertex ids of every connected component
        """
        super().__init__(message, {"components": components})
        self.components = components


class LevelError(InputError):
    """Raised when a level coincides with a vertex level where that is forbidden."""

    pass


class ResolutionError(InputError):
    """Raised when the grid oracle cannot resolve the domain at the given resolution."""

    pass


class NotOnVarietyError(InputError):
    """Raised when a point does not satisfy the emitted system within tolerance."""

    pass


class ImageError(InputError):
    """Raised when a point lies outside the image of the emitted map."""

    pass


class ConditionError(InputError):
    """Raised when a family generator's hypotheses fail."""

    def __init__(self, message: str, report: Any):
        """
        Initialize condition error.

        Args:
            message: Error message
            report: The failing ConditionReport
        """
        tag = getattr(report, "tag", None)
        super().__init__(
            message,
            {
                "tag": getattr(tag, "value", tag),
                "failed": [c.name for c in getattr(report, "conditions", []) if not c.passed],
                "diagnostics": list(getattr(report, "diagnostics", [])),
            },
        )
        self.report = report


class CapacityError(ReebToolkitError):
    """Raised when a size cap or search budget is exceeded (exit code 3)."""

    exit_code = 3


class CertificateError(ReebToolkitError):
    """Raised when a computed certificate fails its own validation (exit code 4)."""

    exit_code = 4
