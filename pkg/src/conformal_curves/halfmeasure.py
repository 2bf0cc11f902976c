#!/usr/bin/env python3
"""
Half-Dimensional Measure of Lightlike Curves

Polygonal sums Σ √‖Δγ‖, the length element (|L(γ̈)|/12)^{1/4}, its
quadrature, reparametrization and convergence studies. The module is
generic over the pseudo-inner product: R^4_1, R^5_1 and the circle space
R^10_4 are selected by a SpaceTag, and any callable inner product works.

Sign coherence of sampled representatives is the caller's responsibility.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import trapezoid

from .curve import Curve
from .grassmann import tri_inner
from .minkowski import Chart, lorentz_form
from .numerics import integrate, loglog_slope
from .osculating import osculating_circle, osculating_circle_2d

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

InnerProduct = Callable[[ArrayLike, ArrayLike], Union[float, FloatArray]]


class SpaceTag(str, Enum):
    """Pseudo-Euclidean spaces hosting lightlike curves."""

    R4_1 = "R4_1"
    R5_1 = "R5_1"
    R10_4 = "R10_4"

    @property
    def dim(self) -> int:
        return {"R4_1": 4, "R5_1": 5, "R10_4": 10}[self.value]

    @property
    def inner(self) -> InnerProduct:
        return tri_inner if self is SpaceTag.R10_4 else lorentz_form


Space = Union[SpaceTag, InnerProduct]


def resolve_inner(space: Space) -> InnerProduct:
    return space.inner if isinstance(space, SpaceTag) else space


@dataclass(frozen=True)
class LightlikeSamples:
    """Values of a curve at strictly increasing parameters."""

    params: FloatArray
    values: FloatArray
    space: Space = SpaceTag.R10_4

    def __post_init__(self) -> None:
        params = np.asarray(self.params, dtype=float)
        values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if params.ndim != 1 or values.shape[0] != params.shape[0]:
            raise ValueError("params and values must have matching lengths")
        if np.any(np.diff(params) <= 0):
            raise ValueError("params must be strictly increasing")
        if isinstance(self.space, SpaceTag) and values.shape[1] != self.space.dim:
            raise ValueError(f"{self.space.value} vectors have {self.space.dim} coordinates")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class LightlikeCurve:
    """A curve given by its position, velocity and acceleration."""

    position: Callable[[float], FloatArray]
    dot: Callable[[float], FloatArray]
    ddot: Callable[[float], FloatArray]
    space: Space = SpaceTag.R10_4

    def sample(self, params: ArrayLike) -> LightlikeSamples:
        grid = np.asarray(params, dtype=float)
        return LightlikeSamples(grid, np.array([self.position(t) for t in grid]), self.space)


def polygonal_half_measure(s: LightlikeSamples) -> float:
    """Σ √‖γ(t_{i+1}) - γ(t_i)‖ with ‖v‖ = √|L(v)|."""
    if s.params.shape[0] < 2:
        raise ValueError("polygonal sums need at least two samples")
    chords = np.diff(s.values, axis=0)
    squares = np.asarray(resolve_inner(s.space)(chords, chords), dtype=float)
    return float(np.sum(np.abs(squares) ** 0.25))


def half_length_element(gamma_ddot: ArrayLike, space: Space = SpaceTag.R10_4) -> float:
    """(|L(γ̈)|/12)^{1/4}."""
    v = np.asarray(gamma_ddot, dtype=float)
    return float((abs(float(resolve_inner(space)(v, v))) / 12.0) ** 0.25)


def half_measure_quadrature(
    curve: LightlikeCurve, a: float, b: float, tol: Optional[float] = None
) -> float:
    """∫ (|L(γ̈)|/12)^{1/4} dt by adaptive quadrature."""
    value, _ = integrate(
        lambda t: half_length_element(curve.ddot(t), curve.space),
        a,
        b,
        epsrel=tol,
        name="half-dimensional measure",
    )
    return value


def half_measure_sampled(params: ArrayLike, ddots: ArrayLike, space: Space = SpaceTag.R5_1) -> float:
    """Trapezoidal integral of the length element over a parameter grid."""
    grid = np.asarray(params, dtype=float)
    values = np.array([half_length_element(v, space) for v in np.asarray(ddots, dtype=float)])
    return float(trapezoid(values, grid))


def reparametrized(
    curve: LightlikeCurve,
    phi: Callable[[float], float],
    dphi: Callable[[float], float],
    ddphi: Callable[[float], float],
) -> LightlikeCurve:
    """The curve u -> γ(φ(u)) with chain-rule velocity and acceleration."""
    return LightlikeCurve(
        position=lambda u: curve.position(phi(u)),
        dot=lambda u: curve.dot(phi(u)) * dphi(u),
        ddot=lambda u: curve.ddot(phi(u)) * dphi(u) ** 2 + curve.dot(phi(u)) * ddphi(u),
        space=curve.space,
    )


@dataclass(frozen=True)
class ConvergencePoint:
    n: int
    polygonal: float
    error: float


@dataclass(frozen=True)
class ConvergenceStudy:
    """Polygonal sums against the quadrature value on uniform subdivisions."""

    points: List[ConvergencePoint]
    reference: float
    order: float

    @property
    def last_relative_error(self) -> float:
        if self.reference == 0:
            return self.points[-1].error
        return self.points[-1].error / abs(self.reference)


def convergence_order(
    curve: LightlikeCurve,
    a: float,
    b: float,
    n_list: Sequence[int],
    reference: Optional[float] = None,
) -> ConvergenceStudy:
    """
    Errors of uniform polygonal sums; the order is the log-log slope of the
    error against the mesh width over the last four nonzero errors.
    """
    ns = [int(n) for n in n_list]
    if any(later <= earlier for earlier, later in zip(ns, ns[1:])):
        raise ValueError("n_list must be increasing")
    ref = half_measure_quadrature(curve, a, b) if reference is None else reference
    points = []
    for n in ns:
        total = polygonal_half_measure(curve.sample(np.linspace(a, b, n + 1)))
        points.append(ConvergencePoint(n, total, abs(total - ref)))
    widths = [(b - a) / p.n for p in points]
    order = loglog_slope(widths, [p.error for p in points])
    logger.info("Convergence study finished", reference=ref, order=order, levels=len(points))
    return ConvergenceStudy(points, ref, order)


def osculating_circle_curve(c: Curve) -> LightlikeCurve:
    """The curve of osculating circles in the circle space, in the curve parameter."""

    def position(t: float) -> FloatArray:
        return osculating_circle(c, t).gamma.p

    def dot(t: float) -> FloatArray:
        return osculating_circle(c, t).parametric_derivatives()[0].p

    def ddot(t: float) -> FloatArray:
        return osculating_circle(c, t).parametric_derivatives()[1].p

    return LightlikeCurve(position, dot, ddot, SpaceTag.R10_4)


def osculating_circle_curve_2d(c: Curve, chart: Chart = Chart.EUCLIDEAN) -> LightlikeCurve:
    """The planar (or spherical) curve of osculating circles in R^4_1."""
    return LightlikeCurve(
        position=lambda t: osculating_circle_2d(c, t, chart).gamma.vector,
        dot=lambda t: osculating_circle_2d(c, t, chart).parametric_derivatives()[0],
        ddot=lambda t: osculating_circle_2d(c, t, chart).parametric_derivatives()[1],
        space=SpaceTag.R4_1,
    )
