#!/usr/bin/env python3
"""
Osculating-Sphere Curves and the Sphere Average

The curve of osculating spheres σ(s̃) in de Sitter space, parametrized by
its own arc-length, the lightlike families ψ_θ = cos(s̃+θ)σ - sin(s̃+θ)σ̇
built from it, and the average of their half-dimensional measures, which
is a fixed multiple c* of the conformal arc-length.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import cumulative_simpson
from scipy.special import gamma as gamma_fn

from .core.config import get_settings
from .core.exceptions import GeometryError
from .curve import (
    Curve,
    TorsionFormula,
    conformal_arclength,
    conformal_arclength_element,
    conformal_torsion,
)
from .grassmann import tri_square
from .halfmeasure import LightlikeSamples, SpaceTag, half_measure_sampled
from .minkowski import lorentz_form, metric
from .numerics import STENCIL_OFFSETS, central_derivatives, integrate
from .osculating import osculating_circle, osculating_sphere

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

TABLE2_EXPECTED = {
    "00": 1.0,
    "01": 0.0,
    "02": -1.0,
    "03": 0.0,
    "11": 1.0,
    "12": 0.0,
    "13": -1.0,
    "22": 1.0,
    "23": 0.0,
}


def _rowwise(u: FloatArray, v: FloatArray) -> FloatArray:
    return np.einsum("ij,jk,ik->i", u, metric(5), v)


@dataclass(frozen=True)
class SphereCurve:
    """
    Osculating spheres on a parameter grid with derivatives in s̃.

    ``speed`` is ds̃/dt; ``s`` starts at 0 on the first grid point.
    """

    t: FloatArray
    s: FloatArray
    sigma: FloatArray
    d1: FloatArray
    d2: FloatArray
    d3: FloatArray
    speed: FloatArray

    @property
    def derivatives(self) -> List[FloatArray]:
        return [self.sigma, self.d1, self.d2, self.d3]

    def nu(self, theta: float) -> FloatArray:
        """Spheres cos θ σ + sin θ σ̇ through the osculating circles."""
        return np.cos(theta) * self.sigma + np.sin(theta) * self.d1

    def table2_residuals(self) -> Dict[str, float]:
        """Largest deviation of <σ^(i), σ^(j)> from its table value."""
        d = self.derivatives
        return {
            key: float(np.max(np.abs(_rowwise(d[int(key[0])], d[int(key[1])]) - value)))
            for key, value in TABLE2_EXPECTED.items()
        }

    def drill_residual(self) -> float:
        """max |L(σ̈ + σ)|: the curvature vector is lightlike."""
        k = self.d2 + self.sigma
        return float(np.max(np.abs(_rowwise(k, k))))

    def tangent_sum_residual(self) -> float:
        """max | |L(σ̇ + σ⃛)| - |L(σ⃛) - 1| |."""
        lhs = np.abs(_rowwise(self.d1 + self.d3, self.d1 + self.d3))
        rhs = np.abs(_rowwise(self.d3, self.d3) - 1.0)
        return float(np.max(np.abs(lhs - rhs)))

    def anti_isometry_residual(self, c: Curve) -> float:
        """max |L(γ̈) - (L(σ⃛) - 1)| with γ the osculating circles, both in s̃."""
        residuals = []
        for t, w, d3 in zip(self.t, self.speed, self.d3):
            _, gamma_tt = osculating_circle(c, t).parametric_derivatives()
            residuals.append(abs(tri_square(gamma_tt) / w**4 - (lorentz_form(d3, d3) - 1.0)))
        return float(max(residuals))


def sphere_curve(c: Curve, grid: ArrayLike, step: Optional[float] = None) -> SphereCurve:
    """
    Sample the osculating-sphere curve on ``grid``.

    Parameter derivatives come from seven-point stencils of pointwise
    osculating spheres aligned with the sphere at the grid point; the chain
    rule turns them into s̃-derivatives. The default step is the curve's
    stencil step, which for sampled curves spans at least one knot interval.
    """
    settings = get_settings()
    h = c.stencil_step() if step is None else step
    ts = np.asarray(grid, dtype=float)
    if ts.ndim != 1 or ts.size < 3 or np.any(np.diff(ts) <= 0):
        raise ValueError("grid must be an increasing array of at least three parameters")

    sigma, d1, d2, d3, speed = [], [], [], [], []
    previous = None
    for t in ts:
        center = osculating_sphere(c, t, reference=previous).vector
        stencil = np.array(
            [osculating_sphere(c, t + k * h, reference=center).vector for k in STENCIL_OFFSETS]
        )
        s_t, s_tt, s_ttt = central_derivatives(stencil, h)

        norm = float(lorentz_form(s_t, s_t))
        if norm <= settings.degeneracy_tol**2:
            raise GeometryError("Osculating-sphere curve is not spacelike", {"t": float(t), "L": norm})
        w = np.sqrt(norm)
        w_t = float(lorentz_form(s_t, s_tt)) / w
        w_tt = (float(lorentz_form(s_tt, s_tt)) + float(lorentz_form(s_t, s_ttt))) / w - w_t**2 / w
        t1 = 1.0 / w
        t2 = -w_t / w**3
        t3 = -w_tt / w**4 + 3.0 * w_t**2 / w**5

        sigma.append(center)
        d1.append(s_t * t1)
        d2.append(s_tt * t1**2 + s_t * t2)
        d3.append(s_ttt * t1**3 + 3.0 * s_tt * t1 * t2 + s_t * t3)
        speed.append(w)
        previous = center

    speeds = np.array(speed)
    arclength = cumulative_simpson(speeds, x=ts, initial=0.0)
    logger.debug("Sphere curve sampled", points=int(ts.size), length=float(arclength[-1]))
    return SphereCurve(ts, arclength, np.array(sigma), np.array(d1), np.array(d2), np.array(d3), speeds)


def sphere_speed(sc: SphereCurve) -> FloatArray:
    """ds̃/dt on the grid."""
    return sc.speed


def sphere_speed_ratio(c: Curve, sc: SphereCurve) -> FloatArray:
    """ds̃/dρ on the grid, to be compared with |conformal torsion|."""
    return np.array([w / conformal_arclength_element(c, t) for t, w in zip(sc.t, sc.speed)])


def torsion_on_grid(c: Curve, sc: SphereCurve) -> FloatArray:
    return np.array([abs(conformal_torsion(c, t, TorsionFormula.SPHERE_SPEED)) for t in sc.t])


@dataclass(frozen=True)
class PsiCurve:
    """ψ_θ with closed-form s̃-derivatives."""

    theta: float
    samples: LightlikeSamples
    dot: FloatArray
    ddot: FloatArray


def psi_theta(sc: SphereCurve, theta: float) -> PsiCurve:
    """
    ψ(θ, s̃) = cos(s̃+θ)σ - sin(s̃+θ)σ̇ with ψ̇ = -sin(s̃+θ)(σ + σ̈).
    """
    if np.any(np.diff(sc.s) <= 0):
        raise GeometryError("Sphere-curve arc-length is not increasing")
    u = (sc.s + theta)[:, None]
    cos, sin = np.cos(u), np.sin(u)
    k = sc.sigma + sc.d2
    values = cos * sc.sigma - sin * sc.d1
    dot = -sin * k
    ddot = -cos * k - sin * (sc.d1 + sc.d3)
    return PsiCurve(float(theta), LightlikeSamples(sc.s, values, SpaceTag.R5_1), dot, ddot)


def c_star() -> float:
    """12^{-1/4} (2π)^{-1} ∫_0^{2π} sqrt|sin u| du, from the beta integral."""
    quarter = 0.5 * np.sqrt(np.pi) * gamma_fn(0.75) / gamma_fn(1.25)
    return float(12.0**-0.25 * 4.0 * quarter / (2.0 * np.pi))


def c_star_quadrature() -> float:
    """Same constant by quadrature; u = v² removes the root singularity at 0."""
    quarter, _ = integrate(
        lambda v: 2.0 * v * np.sqrt(np.sin(v * v)),
        0.0,
        np.sqrt(np.pi / 2.0),
        name="sqrt|sin| integral",
    )
    return float(12.0**-0.25 * 4.0 * quarter / (2.0 * np.pi))


@dataclass(frozen=True)
class AverageResult:
    """θ-average of the half-dimensional measures of ψ_θ against ρ."""

    average: float
    rho: float
    ratio: float
    expected: float
    per_theta: List[float]

    @property
    def relative_error(self) -> float:
        return abs(self.ratio - self.expected) / self.expected


def average_half_measure(
    c: Curve,
    a: float,
    b: float,
    theta_count: Optional[int] = None,
    samples: Optional[int] = None,
) -> AverageResult:
    """Average L^{1/2}(ψ_θ) over a half-open uniform θ-grid of [0, 2π)."""
    settings = get_settings()
    theta_count = settings.theta_count if theta_count is None else theta_count
    if theta_count < 16:
        raise ValueError("theta_count must be at least 16")
    n = settings.default_samples if samples is None else samples
    c.require_interval(a, b)
    sc = sphere_curve(c, np.linspace(a, b, n + 1))

    thetas = np.linspace(0.0, 2.0 * np.pi, theta_count, endpoint=False)
    per_theta = []
    for theta in thetas:
        psi = psi_theta(sc, theta)
        per_theta.append(half_measure_sampled(psi.samples.params, psi.ddot, SpaceTag.R5_1))
    average = float(np.mean(per_theta))
    rho = conformal_arclength(c, a, b)
    ratio = average / rho
    logger.info("Sphere average computed", average=average, rho=rho, ratio=ratio, thetas=theta_count)
    return AverageResult(average, rho, ratio, c_star(), per_theta)
