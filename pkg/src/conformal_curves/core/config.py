#!/usr/bin/env python3
"""
Configuration settings for conformal-curves.

Numerical tolerances, quadrature limits and logging options are read from
the environment (prefix ``CONFORMAL_``) or a local ``.env`` file.

Author: UnityAI Team
Version: 1.0.0
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="CONFORMAL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging configuration
    log_level: str = Field(default="INFO", description="Root log level")
    log_format: Literal["console", "json"] = Field(
        default="console", description="Renderer used by structlog"
    )

    # Classification tolerances
    lightlike_tol: float = Field(
        default=1e-9, gt=0, description="Relative tolerance for |L(v)| vs |v|^2"
    )
    degeneracy_tol: float = Field(
        default=1e-10, gt=0, description="Relative rank tolerance for subspaces"
    )
    circle_tol: float = Field(
        default=1e-9, gt=0, description="Incidence tolerance for circles and quads"
    )

    # Quadrature
    quad_epsabs: float = Field(default=1e-12, gt=0)
    quad_epsrel: float = Field(default=1e-10, gt=0)
    quad_limit: int = Field(default=200, ge=50)

    # Differentiation and splines
    fd_step: float = Field(
        default=5e-3, gt=0, description="Stencil step for osculating-sphere derivatives"
    )
    spline_degree: int = Field(default=9, ge=5, description="Degree of sampled-curve splines")
    spline_knot_stride: int = Field(
        default=2, ge=1, description="Samples per interior knot of sampled-curve splines"
    )
    sampled_tolerance_factor: float = Field(
        default=100.0, ge=1.0, description="Tolerance multiplier for checks on sampled curves"
    )

    # Run defaults
    default_samples: int = Field(default=200, ge=8)
    default_seed: int = Field(default=42)
    theta_count: int = Field(default=64, ge=16)
    significant_digits: int = Field(default=17, ge=1, le=17)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level name."""
        allowed = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in allowed:
            raise ValueError(f"log_level must be one of {sorted(allowed)}")
        return v.upper()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the process-wide settings instance."""
    return Settings()


def reload_settings() -> Settings:
    """Drop the cached settings and read the environment again."""
    get_settings.cache_clear()
    return get_settings()
