#!/usr/bin/env python3
"""
Data Models for Curve Specifications and CLI Output

Pydantic models at the boundaries of the library: the JSON curve
specifications consumed by the CLI, the run configuration, and the
JSON document every command writes.

Author: UnityAI Team
Version: 1.0.0
"""

from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

Domain = Tuple[float, float]


class _SpecBase(BaseModel):
    """Common fields of curve specifications."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    domain: Optional[Domain] = None

    @field_validator("domain")
    @classmethod
    def validate_domain(cls, v: Optional[Domain]) -> Optional[Domain]:
        """Validate parameter interval."""
        if v is not None and not v[0] < v[1]:
            raise ValueError("domain must be an increasing pair [t0, t1]")
        return v


class HelixSpec(_SpecBase):
    """Circular helix (a cos t, a sin t, b t)."""

    kind: Literal["helix"] = "helix"
    a: float = Field(default=1.0, gt=0)
    b: float = 1.0


class CircleSpec(_SpecBase):
    """Circle of radius r in the z = 0 plane."""

    kind: Literal["circle"] = "circle"
    r: float = Field(default=1.0, gt=0)


class EllipseSpec(_SpecBase):
    """Ellipse (a cos t, b sin t, 0)."""

    kind: Literal["ellipse"] = "ellipse"
    a: float = Field(default=2.0, gt=0)
    b: float = Field(default=1.0, gt=0)


class TwistedCubicSpec(_SpecBase):
    """Twisted cubic (t, t^2, t^3)."""

    kind: Literal["twisted_cubic"] = "twisted_cubic"


class SeriesSpec(_SpecBase):
    """Polynomial curve; one ascending coefficient list per coordinate."""

    kind: Literal["series"] = "series"
    coefficients: List[List[float]]

    @field_validator("coefficients")
    @classmethod
    def validate_coefficients(cls, v: List[List[float]]) -> List[List[float]]:
        if len(v) != 3 or any(len(row) == 0 for row in v):
            raise ValueError("coefficients must hold three non-empty rows")
        return v

    @model_validator(mode="after")
    def require_domain(self) -> "SeriesSpec":
        if self.domain is None:
            raise ValueError("series curves need an explicit domain")
        return self


class SamplesSpec(_SpecBase):
    """Ordered point samples fitted by a smoothing spline of degree >= 5."""

    kind: Literal["samples"] = "samples"
    points: List[Tuple[float, float, float]] = Field(min_length=8)
    closed: bool = False
    degree: Optional[int] = Field(default=None, ge=5)
    knot_stride: Optional[int] = Field(default=None, ge=1)


CurveSpec = Annotated[
    Union[HelixSpec, CircleSpec, EllipseSpec, TwistedCubicSpec, SeriesSpec, SamplesSpec],
    Field(discriminator="kind"),
]

curve_spec_adapter: TypeAdapter[CurveSpec] = TypeAdapter(CurveSpec)


class OutputFormat(str, Enum):
    """Serialization of command output."""

    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Options of one CLI invocation."""

    model_config = ConfigDict(frozen=True)

    command: str
    curve: Optional[Path] = None
    samples: int = Field(default=200, ge=8)
    tol: Optional[float] = Field(default=None, gt=0, description="Vertex tolerance in element units")
    seed: int = 42
    format: OutputFormat = OutputFormat.CSV
    out: Optional[Path] = None


class CheckStatus(str, Enum):
    """Outcome of a named property check."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    """One entry of the check report."""

    name: str
    status: CheckStatus
    value: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


Cell = Union[bool, int, float, str, None]


class TableOutput(BaseModel):
    """JSON document written by every command."""

    success: bool = True
    command: str
    curve: Optional[Dict[str, Any]] = None
    columns: List[str] = Field(default_factory=list)
    rows: List[List[Cell]] = Field(default_factory=list)
    summary: Dict[str, Cell] = Field(default_factory=dict)
    checks: Optional[List[CheckResult]] = None
