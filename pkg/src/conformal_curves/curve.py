#!/usr/bin/env python3
"""
Space Curves and Their Conformal Invariants

Curve families with derivatives up to order four, virtual arc-length
reparametrization (chain rule, never resampling), Frenet data, the
conformal arc-length element dρ = (κ'² + κ²τ²)^{1/4} ds, vertices, the
conformal torsion and the light-cone form ω_C.

Author: UnityAI Team
Version: 1.0.0
"""

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

import numpy as np
import structlog
from numpy.polynomial import Polynomial
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ValidationError
from scipy.interpolate import make_lsq_spline

from .core.config import get_settings
from .core.exceptions import (
    CurveSpecError,
    DomainError,
    GeometryError,
    IrregularCurveError,
    VertexError,
)
from .minkowski import MoebiusMap, metric
from .models import (
    CircleSpec,
    EllipseSpec,
    HelixSpec,
    SamplesSpec,
    SeriesSpec,
    TwistedCubicSpec,
    curve_spec_adapter,
)
from .numerics import integrate

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

JET_ORDER = 4


class CurveKind(str, Enum):
    """How derivatives of a curve are obtained."""

    ANALYTIC = "analytic"
    SAMPLED = "sampled"


class Curve(ABC):
    """
    Parametric curve in R^3 with derivatives up to order four.

    Subclasses implement ``_jet``; the returned array has shape (5, 3) with
    row k holding the k-th derivative in the curve parameter.
    """

    kind: CurveKind = CurveKind.ANALYTIC
    closed: bool = False

    @property
    @abstractmethod
    def domain(self) -> Tuple[float, float]:
        """Parameter interval [t0, t1]."""

    @abstractmethod
    def _jet(self, t: float) -> FloatArray:
        """Derivatives of orders 0..4 at t."""

    def jet(self, t: float, order: int = JET_ORDER) -> FloatArray:
        """Rows m, m', ..., m^(order) at parameter t."""
        if not 0 <= order <= JET_ORDER:
            raise ValueError(f"order must be between 0 and {JET_ORDER}")
        return self._jet(float(t))[: order + 1]

    def point(self, t: float) -> FloatArray:
        return self.jet(t, 0)[0]

    def speed(self, t: float) -> float:
        return float(np.linalg.norm(self.jet(t, 1)[1]))

    def stencil_step(self) -> float:
        """Parameter step for finite-difference stencils built on this curve."""
        return get_settings().fd_step

    def require_interval(self, a: float, b: float) -> None:
        """Raise DomainError unless [a, b] lies in the domain (periodic curves excepted)."""
        if self.closed:
            return
        t0, t1 = self.domain
        slack = 1e-12 * max(1.0, abs(t0), abs(t1))
        if min(a, b) < t0 - slack or max(a, b) > t1 + slack:
            raise DomainError(
                "Interval outside the curve domain",
                {"interval": [a, b], "domain": [t0, t1]},
            )

    def check_regular(self, samples: int = 64) -> None:
        """Raise IrregularCurveError when the speed vanishes on a sample grid."""
        t0, t1 = self.domain
        grid = np.linspace(t0, t1, samples)
        speeds = np.array([self.speed(t) for t in grid])
        scale = max(float(np.max(speeds)), np.finfo(float).tiny)
        if np.min(speeds) <= 1e-12 * scale:
            bad = float(grid[int(np.argmin(speeds))])
            raise IrregularCurveError("Curve speed vanishes", {"t": bad})

    def _memo(self) -> Dict[str, Any]:
        return self.__dict__.setdefault("_memo_cache", {})


@dataclass(frozen=True)
class Helix(Curve):
    """(a cos t, a sin t, b t): κ = a/(a²+b²), τ = b/(a²+b²)."""

    a: float = 1.0
    b: float = 1.0
    interval: Tuple[float, float] = (0.0, 2.0 * np.pi)

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise CurveSpecError("Helix radius must be positive", {"a": self.a})

    @property
    def domain(self) -> Tuple[float, float]:
        return self.interval

    def _jet(self, t: float) -> FloatArray:
        c, s = np.cos(t), np.sin(t)
        a, b = self.a, self.b
        return np.array(
            [
                [a * c, a * s, b * t],
                [-a * s, a * c, b],
                [-a * c, -a * s, 0.0],
                [a * s, -a * c, 0.0],
                [a * c, a * s, 0.0],
            ]
        )


@dataclass(frozen=True)
class CircleCurve(Curve):
    """Circle of radius r in the z = 0 plane."""

    r: float = 1.0
    interval: Tuple[float, float] = (0.0, 2.0 * np.pi)
    closed: bool = True

    def __post_init__(self) -> None:
        if self.r <= 0:
            raise CurveSpecError("Circle radius must be positive", {"r": self.r})

    @property
    def domain(self) -> Tuple[float, float]:
        return self.interval

    def _jet(self, t: float) -> FloatArray:
        c, s = np.cos(t), np.sin(t)
        r = self.r
        return np.array(
            [
                [r * c, r * s, 0.0],
                [-r * s, r * c, 0.0],
                [-r * c, -r * s, 0.0],
                [r * s, -r * c, 0.0],
                [r * c, r * s, 0.0],
            ]
        )


@dataclass(frozen=True)
class Ellipse(Curve):
    """(a cos t, b sin t, 0); vertices at the four axis points."""

    a: float = 2.0
    b: float = 1.0
    interval: Tuple[float, float] = (0.0, 2.0 * np.pi)
    closed: bool = True

    def __post_init__(self) -> None:
        if self.a <= 0 or self.b <= 0:
            raise CurveSpecError("Ellipse semi-axes must be positive", {"a": self.a, "b": self.b})

    @property
    def domain(self) -> Tuple[float, float]:
        return self.interval

    def _jet(self, t: float) -> FloatArray:
        c, s = np.cos(t), np.sin(t)
        a, b = self.a, self.b
        return np.array(
            [
                [a * c, b * s, 0.0],
                [-a * s, b * c, 0.0],
                [-a * c, -b * s, 0.0],
                [a * s, -b * c, 0.0],
                [a * c, b * s, 0.0],
            ]
        )


@dataclass(frozen=True)
class TwistedCubic(Curve):
    """(t, t², t³)."""

    interval: Tuple[float, float] = (-1.0, 1.0)

    @property
    def domain(self) -> Tuple[float, float]:
        return self.interval

    def _jet(self, t: float) -> FloatArray:
        return np.array(
            [
                [t, t * t, t**3],
                [1.0, 2.0 * t, 3.0 * t * t],
                [0.0, 2.0, 6.0 * t],
                [0.0, 0.0, 6.0],
                [0.0, 0.0, 0.0],
            ]
        )


@dataclass(frozen=True)
class SeriesCurve(Curve):
    """Polynomial curve with ascending coefficients per coordinate."""

    coefficients: Tuple[Tuple[float, ...], ...]
    interval: Tuple[float, float] = (-1.0, 1.0)
    _polys: Tuple[Tuple[Polynomial, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.coefficients) != 3:
            raise CurveSpecError("Series curves need three coordinate polynomials")
        base = [Polynomial(np.asarray(row, dtype=float)) for row in self.coefficients]
        polys = tuple(tuple(p.deriv(k) for p in base) for k in range(JET_ORDER + 1))
        object.__setattr__(self, "_polys", polys)
        self.check_regular()

    @property
    def domain(self) -> Tuple[float, float]:
        return self.interval

    def _jet(self, t: float) -> FloatArray:
        return np.array([[p(t) for p in row] for row in self._polys])


@dataclass(frozen=True)
class SampledCurve(Curve):
    """
    Least-squares smoothing B-spline through ordered samples, parametrized
    by chord length.

    Interior knots sit every ``knot_stride`` samples, so the spline has
    fewer coefficients than there are points. The degree defaults to
    ``spline_degree`` and is lowered to N - 1 for very short sample lists.
    Closed curves are fitted on samples wrapped past both ends and
    evaluated modulo the period.
    """

    points: FloatArray
    closed: bool = False
    degree: Optional[int] = None
    knot_stride: Optional[int] = None
    kind: CurveKind = field(default=CurveKind.SAMPLED, init=False)
    _spline: Any = field(init=False, repr=False, compare=False)
    _interval: Tuple[float, float] = field(init=False, repr=False, compare=False)
    _knot_spacing: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        settings = get_settings()
        degree = settings.spline_degree if self.degree is None else self.degree
        stride = settings.spline_knot_stride if self.knot_stride is None else self.knot_stride
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise CurveSpecError(f"Samples must be an (N, 3) array, got shape {pts.shape}")
        if pts.shape[0] < 8:
            raise CurveSpecError("Sampled curves need at least 8 points", {"count": int(pts.shape[0])})
        if degree < 5:
            raise CurveSpecError("Spline degree must be at least 5", {"degree": degree})
        if stride < 1:
            raise CurveSpecError("Knot stride must be at least 1", {"knot_stride": stride})
        if not np.all(np.isfinite(pts)):
            raise CurveSpecError("Samples contain non-finite coordinates")
        if self.closed and np.linalg.norm(pts[0] - pts[-1]) > 0.0:
            pts = np.vstack([pts, pts[:1]])
        chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if np.any(chords <= 0.0):
            raise CurveSpecError("Consecutive samples must be distinct")
        u = np.concatenate(([0.0], np.cumsum(chords)))

        fit_u, fit_pts = u, pts
        if self.closed:
            period = u[-1]
            pad = min(4 * (degree + 1), pts.shape[0] - 1)
            fit_u = np.concatenate((u[-pad - 1 : -1] - period, u, u[1 : pad + 1] + period))
            fit_pts = np.vstack([pts[-pad - 1 : -1], pts, pts[1 : pad + 1]])
        spline, spacing = _smoothing_spline(fit_u, fit_pts, degree, stride)

        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "degree", int(spline.k))
        object.__setattr__(self, "knot_stride", stride)
        object.__setattr__(self, "_spline", spline)
        object.__setattr__(self, "_interval", (0.0, float(u[-1])))
        object.__setattr__(self, "_knot_spacing", spacing)
        logger.debug(
            "Sampled curve built",
            count=int(pts.shape[0]),
            length=float(u[-1]),
            degree=int(spline.k),
            knot_spacing=spacing,
            closed=self.closed,
        )
        self.check_regular()

    @property
    def domain(self) -> Tuple[float, float]:
        return self._interval

    @property
    def knot_spacing(self) -> float:
        """Mean distance between consecutive knots of the fitted spline."""
        return self._knot_spacing

    def stencil_step(self) -> float:
        return max(get_settings().fd_step, self._knot_spacing)

    def _jet(self, t: float) -> FloatArray:
        if self.closed:
            t0, t1 = self._interval
            t = t0 + (t - t0) % (t1 - t0)
        return np.array([self._spline(t, nu=k) for k in range(JET_ORDER + 1)])


def _smoothing_spline(u: FloatArray, pts: FloatArray, degree: int, stride: int) -> Tuple[Any, float]:
    """Least-squares spline with interior knots at every ``stride``-th sample quantile."""
    n = u.size
    k = min(degree, n - 1)
    interior = max(min(n - k - 1, (n - 1) // stride - 1), 0)
    positions = np.linspace(0.0, n - 1.0, interior + 2)[1:-1]
    inner = np.interp(positions, np.arange(n, dtype=float), u)
    knots = np.concatenate((np.full(k + 1, u[0]), inner, np.full(k + 1, u[-1])))
    spline = make_lsq_spline(u, pts, knots, k=k)
    return spline, float((u[-1] - u[0]) / (interior + 1))


@dataclass(frozen=True)
class MoebiusImageCurve(Curve):
    """
    Image A·C of a curve, with exact derivatives carried through the light
    cone: w = A m̄ and x = 2 w[2:] / (w0 - w1) differentiated by Leibniz.
    """

    base: Curve
    moebius: MoebiusMap

    def __post_init__(self) -> None:
        if self.moebius.dim != 5:
            raise CurveSpecError("Space curves transform under 5x5 Möbius matrices")

    @property
    def domain(self) -> Tuple[float, float]:
        return self.base.domain

    @property
    def closed(self) -> bool:  # type: ignore[override]
        return self.base.closed

    @property
    def kind(self) -> CurveKind:  # type: ignore[override]
        return self.base.kind

    def stencil_step(self) -> float:
        return self.base.stencil_step()

    def _jet(self, t: float) -> FloatArray:
        u = self.base.jet(t)
        w = lift_derivatives(u) @ self.moebius.matrix.T
        d = w[:, 0] - w[:, 1]
        if abs(d[0]) <= 1e-12 * float(np.linalg.norm(w[0])):
            raise DomainError("Möbius image passes through the point at infinity", {"t": t})
        return quotient_rule(2.0 * w[:, 2:], d)


@dataclass(frozen=True)
class StereographicCurve(Curve):
    """
    Curve on the unit sphere S^2 obtained from a curve in the z = 0 plane by
    reading its lift in the spherical chart of R^4_1.
    """

    base: Curve

    @property
    def domain(self) -> Tuple[float, float]:
        return self.base.domain

    @property
    def closed(self) -> bool:  # type: ignore[override]
        return self.base.closed

    @property
    def kind(self) -> CurveKind:  # type: ignore[override]
        return self.base.kind

    def stencil_step(self) -> float:
        return self.base.stencil_step()

    def _jet(self, t: float) -> FloatArray:
        lifted = lift_derivatives(self.base.jet(t)[:, :2])
        return quotient_rule(lifted[:, 1:], lifted[:, 0])


def quotient_rule(numerator: ArrayLike, denominator: ArrayLike) -> FloatArray:
    """Derivatives of x = f / d from derivatives of f (rows) and d, by Leibniz."""
    f = np.asarray(numerator, dtype=float)
    d = np.asarray(denominator, dtype=float)
    x = np.zeros_like(f)
    for k in range(f.shape[0]):
        acc = f[k].copy()
        for j in range(k):
            acc -= comb(k, j) * x[j] * d[k - j]
        x[k] = acc / d[0]
    return x


def lift_derivatives(derivs: ArrayLike) -> FloatArray:
    """
    Derivatives of the Euclidean lift m̄ = (1 + q/4, -1 + q/4, m), q = m·m,
    from derivatives of m in any parameter (rows 0..k).
    """
    m = np.atleast_2d(np.asarray(derivs, dtype=float))
    order = m.shape[0] - 1
    out = np.zeros((order + 1, m.shape[1] + 2))
    for k in range(order + 1):
        q_k = sum(comb(k, j) * float(m[j] @ m[k - j]) for j in range(k + 1))
        out[k, 0] = out[k, 1] = q_k / 4.0
        out[k, 2:] = m[k]
    out[0, 0] += 1.0
    out[0, 1] -= 1.0
    return out


@dataclass(frozen=True)
class ArcLengthJet:
    """Arc-length derivatives of m at a parameter value, with speed data."""

    t: float
    speed: float
    speed_t: float
    speed_tt: float
    derivs: FloatArray

    @property
    def m(self) -> FloatArray:
        return self.derivs[0]


def arclength_jet(c: Curve, t: float) -> ArcLengthJet:
    """
    Derivatives of m with respect to arc length, by Faà di Bruno from the
    parameter derivatives.
    """
    u = c.jet(t)
    v = float(np.linalg.norm(u[1]))
    if v <= 1e-12 * max(1.0, float(np.linalg.norm(u[0]))):
        raise IrregularCurveError("Curve speed vanishes", {"t": t})
    a = float(u[1] @ u[2])
    b = float(u[2] @ u[2] + u[1] @ u[3])
    b_t = float(3.0 * u[2] @ u[3] + u[1] @ u[4])
    v_t = a / v
    v_tt = b / v - a * a / v**3
    v_ttt = b_t / v - 3.0 * a * b / v**3 + 3.0 * a**3 / v**5

    t1 = 1.0 / v
    t2 = -v_t / v**3
    t3 = -v_tt / v**4 + 3.0 * v_t**2 / v**5
    t4 = -v_ttt / v**5 + 10.0 * v_t * v_tt / v**6 - 15.0 * v_t**3 / v**7

    derivs = np.array(
        [
            u[0],
            u[1] * t1,
            u[2] * t1**2 + u[1] * t2,
            u[3] * t1**3 + 3.0 * u[2] * t1 * t2 + u[1] * t3,
            u[4] * t1**4 + 6.0 * u[3] * t1**2 * t2 + u[2] * (3.0 * t2**2 + 4.0 * t1 * t3) + u[1] * t4,
        ]
    )
    return ArcLengthJet(t=float(t), speed=v, speed_t=v_t, speed_tt=v_tt, derivs=derivs)


def lift_jet(c: Curve, t: float) -> FloatArray:
    """Rows m̄, m̄', ..., m̄'''' of the lift with respect to arc length."""
    return lift_derivatives(arclength_jet(c, t).derivs)


@dataclass(frozen=True)
class FrenetData:
    """Frenet invariants and their arc-length derivatives at one point."""

    speed: float
    kappa: float
    tau: Optional[float]
    kappa_s: float
    kappa_ss: float
    tau_s: Optional[float]

    def __post_init__(self) -> None:
        values = [self.speed, self.kappa, self.kappa_s, self.kappa_ss]
        values += [x for x in (self.tau, self.tau_s) if x is not None]
        if not all(np.isfinite(values)):
            raise GeometryError("Frenet data must be finite", {"values": values})

    @property
    def torsion_defined(self) -> bool:
        return self.tau is not None

    @property
    def q(self) -> float:
        """κ'² + κ²τ², read as zero below the rounding floor 1e-24 κ⁴."""
        twist = 0.0 if self.tau is None else (self.kappa * self.tau) ** 2
        value = self.kappa_s**2 + twist
        return 0.0 if value <= 1e-24 * self.kappa**4 else value

    @property
    def f2(self) -> float:
        return self.kappa**2

    @property
    def f3(self) -> float:
        return self.kappa**4 + self.q


def frenet(c: Curve, t: float, tol: Optional[float] = None) -> FrenetData:
    """
    Curvature, torsion and their arc-length derivatives.

    With T = m', N = m''/κ and B = T x N: κ' = m'''·N, κτ = m'''·B,
    κ'' = m''''·N + κ³ + κτ² and τ' = (m''''·B - 2κ'τ)/κ. Below the
    curvature tolerance the torsion is left undefined.
    """
    tol = get_settings().degeneracy_tol if tol is None else tol
    jet = arclength_jet(c, t)
    _, m1, m2, m3, m4 = jet.derivs
    kappa = float(np.linalg.norm(m2))
    if kappa <= tol:
        third = float(np.linalg.norm(m3))
        kappa_ss = float(m4 @ m3) / third if third > tol else 0.0
        return FrenetData(jet.speed, kappa, None, third, kappa_ss, None)
    normal = m2 / kappa
    binormal = np.cross(m1, normal)
    kappa_s = float(m3 @ normal)
    tau = float(m3 @ binormal) / kappa
    kappa_ss = float(m4 @ normal) + kappa**3 + kappa * tau**2
    tau_s = (float(m4 @ binormal) - 2.0 * kappa_s * tau) / kappa
    return FrenetData(jet.speed, kappa, tau, kappa_s, kappa_ss, tau_s)


def conformal_arclength_element(c: Curve, t: float) -> float:
    """dρ/dt = (κ'² + κ²τ²)^{1/4} |m'(t)|."""
    data = frenet(c, t)
    return float(data.q**0.25 * data.speed)


def conformal_arclength(
    c: Curve, a: float, b: float, tol: Optional[float] = None, points: Optional[list] = None
) -> float:
    """Conformal arc-length ρ(b) - ρ(a) by adaptive quadrature."""
    c.require_interval(a, b)
    value, _ = integrate(
        lambda s: conformal_arclength_element(c, s),
        a,
        b,
        epsrel=tol,
        name="conformal arc-length",
        points=points,
    )
    return value


def arc_length(c: Curve, a: float, b: float, tol: Optional[float] = None) -> float:
    """Euclidean arc-length between two parameters."""
    c.require_interval(a, b)
    value, _ = integrate(c.speed, a, b, epsrel=tol, name="arc-length")
    return value


def max_element(
    c: Curve, a: Optional[float] = None, b: Optional[float] = None, samples: int = 200
) -> float:
    """Largest (κ'² + κ²τ²)^{1/4} on a uniform grid of [a, b]."""
    t0, t1 = c.domain
    a = t0 if a is None else a
    b = t1 if b is None else b
    grid = np.linspace(a, b, samples)
    return float(max(frenet(c, t).q ** 0.25 for t in grid))


def vertex_tolerance(c: Curve, a: Optional[float] = None, b: Optional[float] = None) -> float:
    """
    Default vertex tolerance ε = 1e-6 · max element on [a, b], floored at 1e-6.

    ε is measured in units of the element (κ'² + κ²τ²)^{1/4}, so it scales
    like a curvature. ``is_vertex`` compares κ'² + κ²τ² against ε⁴, which is
    the bound (κ'² + κ²τ²)^{1/2} < (1e-6 · max element)².
    """
    key = f"vertex_tol:{a}:{b}"
    memo = c._memo()
    if key not in memo:
        memo[key] = max(1e-6 * max_element(c, a, b), 1e-6)
    return float(memo[key])


def is_vertex(c: Curve, t: float, tol: Optional[float] = None) -> bool:
    """True iff κ'² + κ²τ² < tol⁴, with ``tol`` in element units."""
    tol = vertex_tolerance(c) if tol is None else tol
    return bool(frenet(c, t).q < tol**4)


def tolerance_scale(c: Curve) -> float:
    """Factor applied to identity tolerances: ``sampled_tolerance_factor`` for sampled curves, else 1."""
    return get_settings().sampled_tolerance_factor if c.kind is CurveKind.SAMPLED else 1.0


class TorsionFormula(str, Enum):
    """Normalization of the conformal torsion."""

    SPHERE_SPEED = "sphere_speed"
    AS_PRINTED = "as_printed"


def conformal_torsion(
    c: Curve,
    t: float,
    formula: TorsionFormula = TorsionFormula.SPHERE_SPEED,
    tol: Optional[float] = None,
) -> float:
    """
    Conformal torsion T at t.

    SPHERE_SPEED divides (2κ'²τ + κ²τ³ + κκ'τ' - κκ''τ) by Q^{5/4},
    Q = κ'² + κ²τ², so that |T| is the speed of the osculating-sphere curve
    per unit conformal arc-length. AS_PRINTED uses 2κ'τ in the numerator and
    Q^{5/2} in the denominator.
    """
    tol = get_settings().degeneracy_tol if tol is None else tol
    data = frenet(c, t)
    if data.tau is None or data.tau_s is None:
        raise VertexError("Torsion undefined where the curvature vanishes", {"t": t})
    if np.sqrt(data.q) < tol:
        raise VertexError("Conformal torsion undefined at a vertex", {"t": t})
    k, ks, kss, tau, tau_s = data.kappa, data.kappa_s, data.kappa_ss, data.tau, data.tau_s
    tail = k * k * tau**3 + k * ks * tau_s - k * kss * tau
    if formula is TorsionFormula.AS_PRINTED:
        return float((2.0 * ks * tau + tail) / data.q**2.5)
    return float((2.0 * ks * ks * tau + tail) / data.q**1.25)


def omega_form(c: Curve, t: float, noise: float = 1e-10) -> float:
    """
    (m'''·m''' - (m''·m'')²)^{1/4} ds/dt from arc-length derivatives of the
    chart map; radicands down to -noise are clamped to zero.
    """
    jet = arclength_jet(c, t)
    f2 = float(jet.derivs[2] @ jet.derivs[2])
    f3 = float(jet.derivs[3] @ jet.derivs[3])
    radicand = f3 - f2 * f2
    if radicand < -noise * max(1.0, f3):
        raise GeometryError(
            "Negative radicand in the light-cone form", {"t": t, "radicand": radicand}
        )
    return float(max(radicand, 0.0) ** 0.25 * jet.speed)


def table1_residuals(c: Curve, t: float) -> Dict[str, float]:
    """
    Differences between the Gram matrix of the arc-length lift derivatives
    and its closed form in κ, κ', τ.
    """
    lift = lift_jet(c, t)
    gram = lift[:4] @ metric(5) @ lift.T
    data = frenet(c, t)
    f2, f3 = data.f2, data.f3
    f2_s = 2.0 * data.kappa * data.kappa_s
    expected = {
        (0, 0): 0.0,
        (0, 1): 0.0,
        (0, 2): -1.0,
        (0, 3): 0.0,
        (0, 4): f2,
        (1, 1): 1.0,
        (1, 2): 0.0,
        (1, 3): -f2,
        (1, 4): -1.5 * f2_s,
        (2, 2): f2,
        (2, 3): 0.5 * f2_s,
        (3, 3): f3,
    }
    return {f"{i}{k}": float(gram[i, k] - value) for (i, k), value in expected.items()}


SpecInput = Union[BaseModel, Dict[str, Any], str, Path]


def _parse_spec(spec: SpecInput) -> BaseModel:
    if isinstance(spec, BaseModel):
        return spec
    try:
        if isinstance(spec, Path):
            return curve_spec_adapter.validate_json(spec.read_text(encoding="utf-8"))
        if isinstance(spec, str):
            return curve_spec_adapter.validate_json(spec)
        return curve_spec_adapter.validate_python(spec)
    except ValidationError as e:
        raise CurveSpecError("Invalid curve specification", {"errors": json.loads(e.json())}) from e
    except (OSError, UnicodeDecodeError) as e:
        raise CurveSpecError(f"Cannot read curve specification: {e}") from e


def load_curve(spec: SpecInput) -> Curve:
    """Build a curve from a spec model, a dict, a JSON string or a JSON file."""
    model = _parse_spec(spec)
    domain = getattr(model, "domain", None)
    builders: Dict[type, Callable[[Any], Curve]] = {
        HelixSpec: lambda s: Helix(s.a, s.b, *_interval(domain)),
        CircleSpec: lambda s: CircleCurve(s.r, *_interval(domain)),
        EllipseSpec: lambda s: Ellipse(s.a, s.b, *_interval(domain)),
        TwistedCubicSpec: lambda s: TwistedCubic(*_interval(domain)),
        SeriesSpec: lambda s: SeriesCurve(tuple(tuple(r) for r in s.coefficients), *_interval(domain)),
        SamplesSpec: lambda s: SampledCurve(
            np.array(s.points, dtype=float), s.closed, s.degree, s.knot_stride
        ),
    }
    curve = builders[type(model)](model)
    logger.info("Curve loaded", kind=getattr(model, "kind", "?"), domain=curve.domain)
    return curve


def _interval(domain: Optional[Tuple[float, float]]) -> Tuple[Tuple[float, float], ...]:
    return () if domain is None else ((float(domain[0]), float(domain[1])),)
