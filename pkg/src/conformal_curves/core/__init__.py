"""Core services: settings, structured logging and the error hierarchy."""

from .config import Settings, get_settings, reload_settings
from .exceptions import (
    CheckFailure,
    ConformalError,
    CurveSpecError,
    DecomposabilityError,
    DegenerateIntersectionError,
    DimensionError,
    DomainError,
    GeometryError,
    InputError,
    IrregularCurveError,
    NumericalError,
    QuadratureError,
    ReconstructionError,
    SignatureError,
    VertexError,
)
from .logging import setup_logging

__all__ = [
    "Settings",
    "get_settings",
    "reload_settings",
    "setup_logging",
    "ConformalError",
    "InputError",
    "CurveSpecError",
    "DimensionError",
    "DomainError",
    "NumericalError",
    "GeometryError",
    "SignatureError",
    "DecomposabilityError",
    "VertexError",
    "DegenerateIntersectionError",
    "ReconstructionError",
    "QuadratureError",
    "IrregularCurveError",
    "CheckFailure",
]
