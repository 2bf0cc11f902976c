#!/usr/bin/env python3
"""
Numerical helpers shared by the geometry modules.

Adaptive quadrature with structured diagnostics, centered finite-difference
stencils, and log-log slope fitting for convergence studies.

Author: UnityAI Team
Version: 1.0.0
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import integrate as sp_integrate

from .core.config import get_settings
from .core.exceptions import QuadratureError

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

# Seven-point centered stencils, offsets -3..3.
STENCIL_D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
STENCIL_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
STENCIL_D3 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0
STENCIL_OFFSETS = np.arange(-3, 4)

# Five-point centered first derivative, offsets -2..2.
STENCIL5_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def integrate(
    fn: Callable[[float], float],
    a: float,
    b: float,
    epsabs: Optional[float] = None,
    epsrel: Optional[float] = None,
    limit: Optional[int] = None,
    name: str = "integral",
    points: Optional[Sequence[float]] = None,
) -> Tuple[float, float]:
    """
    Adaptive quadrature of fn over [a, b].

    Returns ``(value, abserr)``. Convergence trouble is logged; a
    QuadratureError is raised only when the error estimate exceeds the
    requested tolerance by more than a factor of 1e3.
    """
    settings = get_settings()
    epsabs = settings.quad_epsabs if epsabs is None else epsabs
    epsrel = settings.quad_epsrel if epsrel is None else epsrel
    limit = settings.quad_limit if limit is None else limit
    if a == b:
        return 0.0, 0.0

    result = sp_integrate.quad(
        fn,
        a,
        b,
        epsabs=epsabs,
        epsrel=epsrel,
        limit=limit,
        points=points,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])
    if len(result) == 4:
        requested = max(epsabs, epsrel * abs(value))
        logger.warning(
            "Quadrature reported a convergence problem",
            name=name,
            value=value,
            abserr=abserr,
            message=str(result[3]).splitlines()[0],
        )
        if not np.isfinite(value) or abserr > 1e3 * requested:
            raise QuadratureError(
                f"Quadrature of {name} did not converge",
                {"value": value, "abserr": abserr, "requested": requested},
            )
    return value, abserr


def central_derivatives(samples: ArrayLike, h: float) -> Tuple[FloatArray, FloatArray, FloatArray]:
    """
    First three derivatives at the center of seven equally spaced samples.

    ``samples`` has shape (7, ...) with sample k taken at offset (k - 3) h.
    """
    f = np.asarray(samples, dtype=float)
    if f.shape[0] != 7:
        raise ValueError("central_derivatives needs seven samples")
    d1 = np.tensordot(STENCIL_D1, f, axes=1) / h
    d2 = np.tensordot(STENCIL_D2, f, axes=1) / h**2
    d3 = np.tensordot(STENCIL_D3, f, axes=1) / h**3
    return d1, d2, d3


def loglog_slope(xs: ArrayLike, ys: ArrayLike, last: int = 4) -> float:
    """
    Least-squares slope of log(ys) against log(xs) over the last ``last``
    points with positive values; nan when fewer than two remain.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    mask = (x > 0) & (y > 0) & np.isfinite(y)
    x, y = x[mask][-last:], y[mask][-last:]
    if x.size < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
