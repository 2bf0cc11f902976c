#!/usr/bin/env python3
"""
Error hierarchy for conformal-curves.

Every error carries an ``error_type`` string and the process exit code the
CLI maps it to; ``to_dict`` renders the standardized error response.

Author: UnityAI Team
Version: 1.0.0
"""

from datetime import datetime, timezone
from typing import Any, Dict, Optional


class ConformalError(Exception):
    """Base class of all library errors."""

    exit_code: int = 3
    error_type: str = "ConformalError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Create standardized error response."""
        response: Dict[str, Any] = {
            "success": False,
            "error": self.message,
            "error_type": self.error_type,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        if self.details:
            response["details"] = self.details
        return response


class InputError(ConformalError):
    """Invalid user input (exit code 2)."""

    exit_code = 2
    error_type = "InputError"


class CurveSpecError(InputError):
    """Curve specification could not be parsed or validated."""

    error_type = "CurveSpecError"


class DimensionError(InputError):
    """Vectors or matrices of incompatible shape."""

    error_type = "DimensionError"


class DomainError(InputError):
    """Parameter outside the curve domain."""

    error_type = "DomainError"


class NumericalError(ConformalError):
    """A computation could not be completed (exit code 3)."""

    exit_code = 3
    error_type = "NumericalError"


class GeometryError(NumericalError):
    """Geometric precondition violated beyond tolerance."""

    error_type = "GeometryError"


class SignatureError(GeometryError):
    """Vector or subspace has the wrong causal type."""

    error_type = "SignatureError"


class DecomposabilityError(GeometryError):
    """Trivector does not satisfy the Plücker relations."""

    error_type = "DecomposabilityError"


class VertexError(GeometryError):
    """Operation undefined at a vertex of the curve."""

    error_type = "VertexError"


class DegenerateIntersectionError(GeometryError):
    """Tangential or otherwise degenerate incidence."""

    error_type = "DegenerateIntersectionError"


class ReconstructionError(GeometryError):
    """A family of circles cannot be the osculating circles of a curve."""

    error_type = "ReconstructionError"


class IrregularCurveError(GeometryError):
    """Curve with vanishing speed."""

    error_type = "IrregularCurveError"


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge."""

    error_type = "QuadratureError"


class CheckFailure(ConformalError):
    """At least one property check failed (exit code 1)."""

    exit_code = 1
    error_type = "CheckFailure"
