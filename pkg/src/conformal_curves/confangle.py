#!/usr/bin/env python3
"""
Conformal Angle and Cross-Ratios

The angle between the two tangent circles of a pair of curve points, its
small-separation asymptotics, complex cross-ratios of concyclic (or nearly
cosphered) quadruples, the infinitesimal cross-ratio built from osculating
circles, and the cross-ratio closure of a pair of disjoint spheres.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from .core.config import get_settings
from .core.exceptions import GeometryError, VertexError
from .curve import Curve, arc_length, conformal_arclength, frenet, is_vertex
from .desitter import (
    DeSitterPoint,
    EuclideanSphere,
    LorentzSeparation,
    Plane,
    SeparationKind,
    SphereLike,
    incidence_intersection,
    lorentz_separation,
    point_pair_sphere,
    sphere_to_desitter,
)
from .grassmann import CirclePoint, tri_inner, tri_square, wedge3
from .minkowski import AtInfinity, as_vector, orthogonal_complement
from .numerics import loglog_slope
from .osculating import (
    CircleLike,
    LineGeometry,
    circle_geometry,
    circle_through,
    osculating_circle,
    tangent_circle_first,
    tangent_circle_second,
)

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]


class CrossRatioConvention(str, Enum):
    """
    Placement of the points in the complex cross-ratio.

    INFINITESIMAL: (a-b)/(a-d) : (c-b)/(c-d), Möbius invariant.
    SPHERE_PAIR: (a-b)/(a-d) : (c-d)/(c-b).
    """

    INFINITESIMAL = "infinitesimal"
    SPHERE_PAIR = "sphere_pair"


def _plane_frame(normal: FloatArray) -> Tuple[FloatArray, FloatArray]:
    helper = np.eye(3)[int(np.argmin(np.abs(normal)))]
    e1 = np.cross(normal, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(normal, e1)


@dataclass(frozen=True)
class ConcyclicQuad:
    """Four points of R^3 on one circle or line, with that circle's geometry."""

    points: FloatArray
    geometry: CircleLike

    @classmethod
    def from_points(cls, points: Sequence[ArrayLike], tol: float = 1e-9) -> "ConcyclicQuad":
        pts = np.array([as_vector(p, 3) for p in points])
        if pts.shape[0] != 4:
            raise ValueError("a quadruple needs four points")
        distinct = [i for i in range(4) if all(np.linalg.norm(pts[i] - pts[j]) > 0 for j in range(i))]
        if len(distinct) < 3:
            raise GeometryError("Concyclicity needs three distinct points")
        geometry = circle_geometry(circle_through(*pts[distinct[:3]]))
        deviation, scale = _circle_deviation(geometry, pts)
        if deviation > tol * scale:
            raise GeometryError("Points are not concyclic", {"deviation": deviation})
        return cls(pts, geometry)

    def complex_coordinates(self) -> NDArray[np.complex128]:
        g = self.geometry
        if isinstance(g, LineGeometry):
            return ((self.points - g.point) @ g.direction).astype(complex)
        e1, e2 = _plane_frame(g.normal * g.orientation)
        rel = self.points - g.center
        return rel @ e1 + 1j * (rel @ e2)


def _circle_deviation(geometry: CircleLike, pts: FloatArray) -> Tuple[float, float]:
    if isinstance(geometry, LineGeometry):
        rel = pts - geometry.point
        off = rel - np.outer(rel @ geometry.direction, geometry.direction)
        return float(np.max(np.linalg.norm(off, axis=1))), max(1.0, float(np.max(np.abs(pts))))
    rel = pts - geometry.center
    radial = np.abs(np.linalg.norm(rel, axis=1) - geometry.radius)
    normal = np.abs(rel @ geometry.normal)
    return float(max(np.max(radial), np.max(normal))), geometry.radius


def _cross(z: Sequence[complex], convention: CrossRatioConvention) -> complex:
    a, b, c, d = z
    if convention is CrossRatioConvention.INFINITESIMAL:
        num, den = (a - b) * (c - d), (a - d) * (c - b)
    else:
        num, den = (a - b) * (c - b), (a - d) * (c - d)
    if den == 0:
        raise GeometryError("Cross-ratio undefined for coincident points")
    return complex(num / den)


def cross_ratio(
    q: ConcyclicQuad, convention: CrossRatioConvention = CrossRatioConvention.INFINITESIMAL
) -> complex:
    """Complex cross-ratio in a frame of the plane of the circle."""
    return _cross(q.complex_coordinates(), convention)


def cross_ratio_on_sphere(
    points: Sequence[ArrayLike],
    sphere: SphereLike,
    convention: CrossRatioConvention = CrossRatioConvention.INFINITESIMAL,
) -> complex:
    """
    Cross-ratio of four points of a sphere after stereographic projection
    from the sphere point opposite their mean direction.
    """
    pts = np.array([as_vector(p, 3) for p in points])
    if isinstance(sphere, Plane):
        e1, e2 = _plane_frame(sphere.normal)
        return _cross(pts @ e1 + 1j * (pts @ e2), convention)

    rel = pts - sphere.center
    mean = rel.mean(axis=0)
    if np.linalg.norm(mean) <= 1e-12 * sphere.radius:
        mean = rel[0]
    axis = -mean / np.linalg.norm(mean)
    r = sphere.radius
    heights = rel @ axis
    if np.any(r - heights <= 1e-12 * r):
        raise GeometryError("A point coincides with the projection pole")
    scale = r / (r - heights)
    projected = r * axis + (rel - r * axis) * scale[:, None]
    e1, e2 = _plane_frame(axis)
    return _cross(projected @ e1 + 1j * (projected @ e2), convention)


def conformal_angle(c: Curve, t1: float, t2: float) -> float:
    """
    Angle between Γ(x, x, y) and Γ(x, y, y), from their product
    c = <Γ1, Γ2>; the chord form 2 asin(sqrt(L(Γ1 - Γ2)/4)) is used near c = 1.
    """
    g1 = tangent_circle_first(c, t1, t2)
    g2 = tangent_circle_second(c, t1, t2)
    product = float(tri_inner(g1.tri, g2.tri))
    if product > 0.5:
        chord = float(tri_square(g1.p - g2.p))
        return float(2.0 * np.arcsin(np.sqrt(np.clip(chord / 4.0, 0.0, 1.0))))
    return float(np.arccos(np.clip(product, -1.0, 1.0)))


def _unit_tangent(c: Curve, t: float) -> FloatArray:
    d = c.jet(t, 1)[1]
    return d / np.linalg.norm(d)


def conformal_angle_euclidean(c: Curve, t1: float, t2: float) -> float:
    """
    Same angle from tangents: the tangent of Γ(x, y, y) at x is the
    reflection of T_y across the chord direction.
    """
    x, y = c.point(t1), c.point(t2)
    chord = y - x
    length = float(np.linalg.norm(chord))
    if length == 0:
        raise GeometryError("Conformal angle needs two distinct points")
    d = chord / length
    tx, ty = _unit_tangent(c, t1), _unit_tangent(c, t2)
    reflected = 2.0 * float(ty @ d) * d - ty
    return float(np.arctan2(np.linalg.norm(np.cross(tx, reflected)), float(tx @ reflected)))


def _require_regular_point(c: Curve, t: float) -> float:
    q = frenet(c, t).q
    if is_vertex(c, t):
        raise VertexError("Angle asymptotics are undefined at a vertex", {"t": t, "q": q})
    return q


def angle_asymptotic_ratio(c: Curve, t: float, h: float) -> float:
    """6θ / (|x - y|² sqrt(κ'² + κ²τ²)), which tends to 1."""
    q = _require_regular_point(c, t)
    theta = conformal_angle(c, t, t + h)
    distance = float(np.linalg.norm(c.point(t + h) - c.point(t)))
    return float(6.0 * theta / (distance**2 * np.sqrt(q)))


def arclength_via_angle(c: Curve, t: float, h: float) -> float:
    """sqrt(6θ)/Δs, which tends to dρ/ds = (κ'² + κ²τ²)^{1/4}."""
    theta = conformal_angle(c, t, t + h)
    return float(np.sqrt(6.0 * theta) / arc_length(c, t, t + h))


@dataclass(frozen=True)
class InfinitesimalCrossRatio:
    """One step of the osculating-circle cross-ratio experiment."""

    h: float
    cross: complex
    rho_step: float

    @property
    def rho_ratio(self) -> float:
        """sqrt(6) |cross|^{1/4} / Δρ."""
        return float(np.sqrt(6.0) * abs(self.cross) ** 0.25 / self.rho_step)

    @property
    def im_re_ratio(self) -> float:
        re = abs(self.cross.real)
        return float("inf") if re == 0 else abs(self.cross.imag) / re


def _second_intersection(sigma: DeSitterPoint, circle: CirclePoint, own: FloatArray) -> FloatArray:
    hits = incidence_intersection(sigma, circle.basis()).require_transversal()
    points = [p for p in hits.project() if not isinstance(p, AtInfinity)]
    if not points:
        raise GeometryError("Osculating circle misses the orthogonal sphere")
    return max(points, key=lambda p: float(np.linalg.norm(p - own)))


def infinitesimal_cross_ratio_experiment(c: Curve, t: float, h: float) -> InfinitesimalCrossRatio:
    """
    Cross-ratio of m(t), y(t+h), m(t+h), y(t) on the sphere orthogonal to
    the curve at m(t) through m(t+h), where y(s) is the second point of the
    osculating circle at s on that sphere.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    m0, m1 = c.point(t), c.point(t + h)
    tangent = _unit_tangent(c, t)
    step = m1 - m0
    along = float(tangent @ step)
    if along <= 0:
        raise GeometryError("Step does not advance along the tangent", {"h": h})
    lam = float(step @ step) / (2.0 * along)
    sphere = EuclideanSphere(m0 + lam * tangent, abs(lam))
    sigma = sphere_to_desitter(sphere)

    y0 = _second_intersection(sigma, osculating_circle(c, t).gamma, m0)
    y1 = _second_intersection(sigma, osculating_circle(c, t + h).gamma, m1)
    cross = cross_ratio_on_sphere([m0, y1, m1, y0], sphere, CrossRatioConvention.INFINITESIMAL)
    rho = conformal_arclength(c, t, t + h)
    logger.debug("Cross-ratio step", t=t, h=h, cross=str(cross), rho_step=rho)
    return InfinitesimalCrossRatio(h, cross, rho)


def h_sweep(
    fn: Callable[[float], float], h0: float = 0.1, levels: int = 6
) -> List[Tuple[float, float]]:
    """Evaluate fn on h0, h0/2, ..., h0/2^(levels-1)."""
    return [(h0 * 2.0**-k, fn(h0 * 2.0**-k)) for k in range(levels)]


def fit_order(sweep: Sequence[Tuple[float, float]], limit: float = 0.0) -> float:
    """Observed order of |value - limit| in h over the last four levels."""
    hs = [h for h, _ in sweep]
    errors = [abs(v - limit) for _, v in sweep]
    return loglog_slope(hs, errors)


@dataclass(frozen=True)
class SpherePairClosure:
    """Cross-ratio and separations of two disjoint spheres cut by a common orthogonal circle."""

    cross: complex
    distance: float
    pair_separation: LorentzSeparation

    @property
    def expected(self) -> float:
        """((e^l - 1)/(e^l + 1))^2."""
        return float(np.tanh(self.distance / 2.0) ** 2)

    @property
    def residual(self) -> float:
        return abs(abs(self.cross) - self.expected)


def sphere_pair_closure(
    s1: EuclideanSphere, s2: EuclideanSphere, seed: Optional[int] = None
) -> SpherePairClosure:
    """
    Intersect two disjoint spheres with a circle orthogonal to both; the
    point pairs carry the spheres' Lorentz distance and cross-ratio.
    """
    sigma1, sigma2 = sphere_to_desitter(s1), sphere_to_desitter(s2)
    separation = lorentz_separation(sigma1, sigma2)
    if separation.kind is not SeparationKind.DISJOINT:
        raise GeometryError("Spheres are not disjoint", {"kind": separation.kind.value})

    rng = np.random.default_rng(get_settings().default_seed if seed is None else seed)
    complement = orthogonal_complement(np.array([sigma1.vector, sigma2.vector]))
    extra = rng.standard_normal(complement.shape[0]) @ complement
    span = np.array([sigma1.vector, sigma2.vector, extra])
    # raises unless the span is a circle
    CirclePoint.from_trivector(wedge3(*span))

    pairs = []
    for sigma in (sigma1, sigma2):
        hits = incidence_intersection(sigma, span).require_transversal()
        points = hits.project()
        if any(isinstance(p, AtInfinity) for p in points):
            raise GeometryError("Common orthogonal circle passes through infinity")
        pairs.append((hits.points, points))

    taus = [point_pair_sphere(raw, span, align=s.vector) for (raw, _), s in zip(pairs, (sigma1, sigma2))]
    pair_separation = lorentz_separation(taus[0], taus[1])

    (a, c), (b, d) = pairs[0][1], pairs[1][1]
    quads = [ConcyclicQuad.from_points(order, tol=1e-7) for order in ([a, b, c, d], [a, d, c, b])]
    crosses = [cross_ratio(q, CrossRatioConvention.INFINITESIMAL) for q in quads]
    cross = min(crosses, key=abs)
    logger.debug("Sphere pair closure", distance=separation.value, cross=str(cross))
    return SpherePairClosure(cross, separation.value, pair_separation)
