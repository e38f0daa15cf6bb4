"""
Error types raised by the lab.

Every error carries a stable reason ``code`` so that the command-line front end
can report failures as machine-readable JSON.
"""

from typing import Any, Dict, Optional


class LabError(ValueError):
    """Base class for all precondition and domain errors."""

    code: str = "lab error"

    def __init__(self, message: str, code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Render the error as the structured payload written to stderr."""
        payload = {"error": self.code, "message": str(self)}
        if self.details:
            payload["details"] = self.details
        return payload


class EmptyInputError(LabError):
    code = "empty input"


class DimensionMismatchError(LabError):
    code = "inconsistent dimensions"


class DimensionLimitError(LabError):
    code = "dimension limit"


class NotAPolytopeError(LabError):
    code = "not a polytope"


class ImproperFunctionError(LabError):
    code = "improper result"


class ThinDomainError(LabError):
    code = "empty or thin set"


class OutsideDomainError(LabError):
    code = "outside domain"


class RegionError(LabError):
    code = "region escapes domain interior"


class NotInteriorError(LabError):
    code = "A not interior to domain"


class ConeViolationError(LabError):
    code = "cone violation"


class SupportError(LabError):
    code = "support escapes interior"


class OutsideMaximalConeError(LabError):
    code = "outside maximal cone"


class DuplicateNodesError(LabError):
    code = "duplicate nodes"


class UnknownShapeError(LabError):
    code = "unknown catalog shape"


class IncreaseRhoError(LabError):
    code = "increase rho"


class PreconditionError(LabError):
    code = "precondition violation"


class MalformedInputError(PreconditionError):
    """A document passed schema validation but lacks a field its kind needs."""

    code = "malformed input"
