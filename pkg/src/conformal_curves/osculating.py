#!/usr/bin/env python3
"""
Osculating Circles and Spheres

Circles through point triples and their limits, the lightlike curve of
osculating circles in the circle space, vertex conditions, the tangent
criterion for curves of osculating circles, curve reconstruction from a
circle family, the planar/spherical case in R^4_1, and osculating spheres.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import null_space

from .core.config import get_settings
from .core.exceptions import (
    GeometryError,
    ReconstructionError,
    SignatureError,
    VertexError,
)
from .curve import Curve, arclength_jet, lift_derivatives, lift_jet
from .desitter import DeSitterPoint
from .grassmann import (
    CirclePoint,
    TriVector,
    is_decomposable,
    subspace_basis,
    tri_inner,
    tri_square,
    wedge3,
)
from .minkowski import (
    CausalClass,
    Chart,
    ChartPoint,
    as_vector,
    lift_euclidean,
    lorentz_form,
    lorentz_gram,
    lorentz_orthonormalize,
    metric,
    null_vector_n1,
    orthogonal_complement,
    project_to_chart,
)
from .numerics import STENCIL5_D1

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class OsculatingSample:
    """Osculating circle γ with its arc-length derivatives γ', γ''."""

    t: float
    gamma: CirclePoint
    gamma_dot: TriVector
    gamma_ddot: TriVector
    speed: float = 1.0
    speed_t: float = 0.0

    def parametric_derivatives(self) -> Tuple[TriVector, TriVector]:
        """(γ_t, γ_tt) in the curve parameter: γ_t = v γ', γ_tt = v² γ'' + v_t γ'."""
        v, v_t = self.speed, self.speed_t
        return self.gamma_dot * v, self.gamma_ddot * (v * v) + self.gamma_dot * v_t


@dataclass(frozen=True)
class CircleGeometry:
    """A round circle: center, radius, unit plane normal and orientation sign."""

    center: FloatArray
    radius: float
    normal: FloatArray
    orientation: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_vector(self.center, 3))
        n = as_vector(self.normal, 3)
        if abs(float(np.linalg.norm(n)) - 1.0) > 1e-9:
            raise GeometryError("Circle plane normal must be a unit vector")
        object.__setattr__(self, "normal", n)
        if not self.radius > 0:
            raise GeometryError("Circle radius must be positive", {"radius": self.radius})
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


@dataclass(frozen=True)
class LineGeometry:
    """A line, the circle through the point at infinity, traversed along ``direction``."""

    point: FloatArray
    direction: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", as_vector(self.point, 3))
        d = as_vector(self.direction, 3)
        if abs(float(np.linalg.norm(d)) - 1.0) > 1e-9:
            raise GeometryError("Line direction must be a unit vector")
        object.__setattr__(self, "direction", d)


CircleLike = Union[CircleGeometry, LineGeometry]


def _circle_from_lifts(a: ArrayLike, b: ArrayLike, c: ArrayLike, what: str) -> CirclePoint:
    p = wedge3(a, b, c)
    scale = float(np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c))
    if p.norm() <= 1e-12 * scale:
        raise GeometryError(f"Degenerate {what}: points coincide")
    return CirclePoint.from_trivector(p)


def circle_through(x: ArrayLike, y: ArrayLike, z: ArrayLike) -> CirclePoint:
    """The oriented circle (or line) through three distinct points, in cyclic order."""
    lifts = [lift_euclidean(p).vector for p in (x, y, z)]
    return _circle_from_lifts(*lifts, what="circle")


def osculating_circle(c: Curve, t: float) -> OsculatingSample:
    """
    γ = m̄∧m̄'∧m̄'', γ' = m̄∧m̄'∧m̄''', γ'' = m̄∧m̄''∧m̄''' + m̄∧m̄'∧m̄''''
    with arc-length derivatives of the lift.
    """
    jet = arclength_jet(c, t)
    m0, m1, m2, m3, m4 = lift_derivatives(jet.derivs)
    raw = wedge3(m0, m1, m2)
    norm = tri_square(raw)
    if norm <= 0:
        raise SignatureError("Osculating 3-space is not timelike", {"tri_inner": norm, "t": t})
    scale = 1.0 / np.sqrt(norm)
    gamma = CirclePoint.from_trivector(raw * scale)
    gamma_dot = wedge3(m0, m1, m3) * scale
    gamma_ddot = (wedge3(m0, m2, m3) + wedge3(m0, m1, m4)) * scale
    return OsculatingSample(
        t=float(t),
        gamma=gamma,
        gamma_dot=gamma_dot,
        gamma_ddot=gamma_ddot,
        speed=jet.speed,
        speed_t=jet.speed_t,
    )


def tangent_circle_first(c: Curve, t1: float, t2: float) -> CirclePoint:
    """Γ(x, x, y): the circle tangent to the curve at x = m(t1) through y = m(t2)."""
    x = lift_derivatives(c.jet(t1, 1))
    y = lift_euclidean(c.point(t2)).vector
    return _circle_from_lifts(x[0], x[1], y - x[0], what="tangent circle")


def tangent_circle_second(c: Curve, t1: float, t2: float) -> CirclePoint:
    """Γ(x, y, y): the circle through x = m(t1) tangent to the curve at y = m(t2)."""
    x = lift_euclidean(c.point(t1)).vector
    y = lift_derivatives(c.jet(t2, 1))
    return _circle_from_lifts(x - y[0], y[0], y[1], what="tangent circle")


def _light_directions(p: CirclePoint, count: int = 3) -> FloatArray:
    """Lightlike vectors of the circle's 3-space, evenly spread in angle."""
    basis, signs = lorentz_orthonormalize(p.basis())
    order = np.argsort(signs)
    e0, e1, e2 = basis[order]
    angles = 2.0 * np.pi * np.arange(count) / count + 0.1
    return np.array([e0 + np.cos(a) * e1 + np.sin(a) * e2 for a in angles])


def circle_geometry(p: CirclePoint, tol: Optional[float] = None) -> CircleLike:
    """Euclidean center/radius/normal of a circle point, or the line case."""
    tol = get_settings().circle_tol if tol is None else tol
    basis = p.basis()
    n1 = null_vector_n1()
    through_infinity = np.linalg.norm(n1 - basis.T @ (basis @ n1)) <= tol * np.linalg.norm(n1)

    lights = _light_directions(p, 6)
    gaps = np.abs(lights[:, 0] - lights[:, 1]) / np.linalg.norm(lights, axis=1)
    best = np.sort(np.argsort(gaps)[-2 if through_infinity else -3 :])
    if through_infinity:
        x1, x2 = (np.asarray(project_to_chart(v, tol=1e-6)) for v in lights[best])
        d = (x2 - x1) / np.linalg.norm(x2 - x1)
        line = LineGeometry(x1, d)
        if tri_inner(circle_from_geometry(line).tri, p.tri) < 0:
            line = LineGeometry(x1, -d)
        return line

    x1, x2, x3 = (np.asarray(project_to_chart(v, tol=1e-6)) for v in lights[best])
    a, b = x1 - x3, x2 - x3
    axb = np.cross(a, b)
    center = x3 + np.cross(float(a @ a) * b - float(b @ b) * a, axb) / (2.0 * float(axb @ axb))
    radius = float(np.mean([np.linalg.norm(x - center) for x in (x1, x2, x3)]))
    normal = axb / np.linalg.norm(axb)
    geometry = CircleGeometry(center, radius, normal)
    if tri_inner(circle_from_geometry(geometry).tri, p.tri) < 0:
        geometry = CircleGeometry(center, radius, -normal)
    return geometry


def circle_from_geometry(g: CircleLike) -> CirclePoint:
    """Inverse of circle_geometry."""
    if isinstance(g, LineGeometry):
        return _circle_from_lifts(
            lift_euclidean(g.point).vector,
            lift_euclidean(g.point + g.direction).vector,
            null_vector_n1(),
            what="line",
        )
    n = g.normal * g.orientation
    helper = np.eye(3)[int(np.argmin(np.abs(n)))]
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    pts = [g.center + g.radius * e1, g.center + g.radius * e2, g.center - g.radius * e1]
    return circle_through(*pts)


@dataclass(frozen=True)
class VertexConditions:
    """The three equivalent vertex conditions evaluated at one sample."""

    tangent_vanishes: bool
    half_length_vanishes: bool
    rank_deficient: bool
    tangent_norm: float
    ddot_square: float
    rank_ratio: float

    @property
    def agree(self) -> bool:
        return self.tangent_vanishes == self.half_length_vanishes == self.rank_deficient

    @property
    def is_vertex(self) -> bool:
        return self.tangent_vanishes and self.half_length_vanishes and self.rank_deficient


def vertex_conditions(sample: OsculatingSample, tol: float = 1e-6) -> VertexConditions:
    """‖γ̇‖ < tol, |L(γ̈)| < tol and rank span(γ̇, γ̈) < 2 in the curve parameter.

    The rank test compares the second singular value against max(s1, 1),
    which keeps a vanishing pair (circles) rank deficient.
    """
    g_t, g_tt = sample.parametric_derivatives()
    singular = np.linalg.svd(np.vstack([g_t.p, g_tt.p]), compute_uv=False)
    ratio = float(singular[1] / max(singular[0], 1.0))
    norm = g_t.norm()
    ddot = float(tri_square(g_tt))
    return VertexConditions(
        tangent_vanishes=norm < tol,
        half_length_vanishes=abs(ddot) < tol,
        rank_deficient=ratio < tol,
        tangent_norm=norm,
        ddot_square=ddot,
        rank_ratio=ratio,
    )


def burstall_matrix(gamma: CirclePoint, gamma_dot: TriVector) -> Tuple[FloatArray, FloatArray]:
    """
    The 2x3 matrix A of γ̇ in Hom(Π, Π^⊥) and the signs η of the orthonormal
    basis of Π. Entry A[a, i] is <γ̇, E_ai>/η_i with E_ai the wedge of the
    basis of Π with e_i replaced by f_a.
    """
    basis, eta = lorentz_orthonormalize(gamma.basis())
    complement = orthogonal_complement(basis)
    f, f_signs = lorentz_orthonormalize(complement)
    if complement.shape[0] != 2 or np.any(f_signs < 0):
        raise SignatureError("Complement of a circle 3-space must be a spacelike plane")
    a = np.zeros((2, 3))
    for row in range(2):
        for i in range(3):
            vectors = [basis[k] if k != i else f[row] for k in range(3)]
            a[row, i] = tri_inner(gamma_dot, wedge3(*vectors)) / eta[i]
    return a, eta


def tangent_from_matrix(gamma: CirclePoint, a: ArrayLike) -> TriVector:
    """Σ A[a, i] E_ai: the tangent at γ whose matrix is A."""
    matrix = np.asarray(a, dtype=float).reshape(2, 3)
    basis, _ = lorentz_orthonormalize(gamma.basis())
    f, _ = lorentz_orthonormalize(orthogonal_complement(basis))
    total = np.zeros(10)
    for row in range(2):
        for i in range(3):
            vectors = [basis[k] if k != i else f[row] for k in range(3)]
            total += matrix[row, i] * wedge3(*vectors).p
    return TriVector(total)


def burstall_check(gamma: CirclePoint, gamma_dot: TriVector, tol: float = 1e-9) -> bool:
    """
    True iff the rows a1, a2 of the tangent matrix satisfy
    <a1, a1> = <a2, a2> = <a1, a2> = 0 in the signature of Π.
    """
    a, eta = burstall_matrix(gamma, gamma_dot)
    scale = max(float(np.sum(a * a)), np.finfo(float).tiny)
    products = [
        float(np.sum(eta * a[0] * a[0])),
        float(np.sum(eta * a[1] * a[1])),
        float(np.sum(eta * a[0] * a[1])),
    ]
    return bool(max(abs(x) for x in products) <= tol * scale)


def tangent_is_admissible(gamma_dot: TriVector, tol: float = 1e-9) -> bool:
    """Direct test: γ̇ lightlike and decomposable."""
    scale = max(float(gamma_dot.p @ gamma_dot.p), np.finfo(float).tiny)
    lightlike = abs(tri_square(gamma_dot)) <= tol * scale
    return bool(lightlike and is_decomposable(gamma_dot, tol))


def coherent_signs(circles: Sequence[CirclePoint]) -> List[CirclePoint]:
    """Flip representatives so consecutive circles have positive inner product."""
    out: List[CirclePoint] = []
    for p in circles:
        if out and tri_inner(out[-1].tri, p.tri) < 0:
            p = -p
        out.append(p)
    return out


def _is_uniform(params: FloatArray) -> bool:
    steps = np.diff(params)
    return bool(np.all(steps > 0) and np.ptp(steps) <= 1e-9 * float(np.mean(steps)))


def _finite_differences(params: FloatArray, values: FloatArray) -> Tuple[FloatArray, FloatArray]:
    """First and second derivatives of sampled trivectors."""
    if len(params) >= 5 and _is_uniform(params):
        h = float(params[1] - params[0])
        first = np.full_like(values, np.nan)
        for k in range(2, len(params) - 2):
            first[k] = np.tensordot(STENCIL5_D1, values[k - 2 : k + 3], axes=1) / h
        second = np.full_like(values, np.nan)
        second[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h**2
        return first, second
    first = np.gradient(values, params, axis=0, edge_order=2)
    second = np.gradient(first, params, axis=0, edge_order=2)
    return first, second


SampleInput = Union[OsculatingSample, Tuple[float, CirclePoint]]


def _null_direction(gamma_dot: TriVector, kernel_tol: float) -> FloatArray:
    basis = subspace_basis(gamma_dot)
    eigenvalues, eigenvectors = np.linalg.eigh(lorentz_gram(basis))
    order = np.argsort(np.abs(eigenvalues))
    smallest, largest = abs(eigenvalues[order[0]]), abs(eigenvalues[order[-1]])
    if smallest > kernel_tol * largest:
        raise ReconstructionError(
            "Tangent 3-space is not isotropic", {"eigenvalues": eigenvalues.tolist()}
        )
    return eigenvectors[:, order[0]] @ basis


def reconstruct_curve(
    samples: Sequence[SampleInput],
    tol: Optional[float] = None,
    kernel_tol: float = 1e-6,
) -> List[Tuple[float, ChartPoint]]:
    """
    Recover curve points from a family of osculating circles.

    Each tangent γ̇ must be a nonzero lightlike decomposable trivector with
    span(γ̇, γ̈) two-dimensional; the point is the degenerate direction of the
    isotropic 3-space of γ̇. Samples carrying analytic tangents
    (OsculatingSample) are used directly; otherwise the tangents come from
    finite differences of sign-coherent circles and only interior samples
    are reconstructed.
    """
    if len(samples) == 0:
        return []
    analytic = all(isinstance(s, OsculatingSample) for s in samples)
    if analytic:
        params = np.array([s.t for s in samples])  # type: ignore[union-attr]
        tangents = np.array([s.gamma_dot.p for s in samples])  # type: ignore[union-attr]
        seconds = np.array([s.gamma_ddot.p for s in samples])  # type: ignore[union-attr]
        tol = 1e-9 if tol is None else tol
    else:
        if len(samples) < 3:
            raise ReconstructionError("Finite differences need at least three samples")
        pairs = [(s.t, s.gamma) if isinstance(s, OsculatingSample) else s for s in samples]
        params = np.array([float(t) for t, _ in pairs])
        circles = coherent_signs([p for _, p in pairs])
        tangents, seconds = _finite_differences(params, np.array([p.p for p in circles]))
        tol = 1e-5 if tol is None else tol

    scale = max(float(np.nanmax(np.linalg.norm(tangents, axis=1))), np.finfo(float).tiny)
    points: List[Tuple[float, ChartPoint]] = []
    for t, g1, g2 in zip(params, tangents, seconds):
        if np.any(np.isnan(g1)) or np.any(np.isnan(g2)):
            continue
        norm = float(np.linalg.norm(g1))
        if norm <= tol * max(scale, 1.0):
            raise ReconstructionError(
                "Tangent of the circle family vanishes (vertex)", {"t": float(t)}
            )
        singular = np.linalg.svd(np.vstack([g1, g2]), compute_uv=False)
        if singular[1] <= 1e-6 * singular[0]:
            raise ReconstructionError(
                "family of circles tangent at a constant point", {"t": float(t)}
            )
        gdot = TriVector(g1 / norm)
        if abs(tri_square(gdot)) > tol:
            raise ReconstructionError(
                "Tangent of the circle family is not lightlike",
                {"t": float(t), "L": tri_square(gdot)},
            )
        if not is_decomposable(gdot, tol):
            raise ReconstructionError("Tangent violates the Plücker relations", {"t": float(t)})
        points.append((float(t), project_to_chart(_null_direction(gdot, kernel_tol), tol=1e-6)))
    logger.debug("Curve reconstructed", samples=len(samples), points=len(points), analytic=analytic)
    return points


def _cross2(u: FloatArray, v: FloatArray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def _det3(a: FloatArray, b: FloatArray, d: FloatArray) -> float:
    return float(np.linalg.det(np.vstack([a, b, d])))


@dataclass(frozen=True)
class OsculatingCircle2D:
    """γ = k_g m̄ + n̄ in R^4_1 with arc-length derivatives."""

    t: float
    gamma: DeSitterPoint
    gamma_dot: FloatArray
    gamma_ddot: FloatArray
    k_g: float
    k_g_s: float
    speed: float = 1.0
    speed_t: float = 0.0

    def parametric_derivatives(self) -> Tuple[FloatArray, FloatArray]:
        v, v_t = self.speed, self.speed_t
        return v * self.gamma_dot, v * v * self.gamma_ddot + v_t * self.gamma_dot


def osculating_circle_2d(c: Curve, t: float, chart: Chart = Chart.EUCLIDEAN) -> OsculatingCircle2D:
    """
    Osculating circle of a curve in the z = 0 plane (Euclidean chart) or on
    the unit sphere S^2 (spherical chart) as a de Sitter point of R^4_1.

    γ' = k_g' m̄ and γ'' = k_g'' m̄ + k_g' m̄' exactly.
    """
    jet = arclength_jet(c, t)
    x0, x1, x2, x3, x4 = jet.derivs
    if chart is Chart.EUCLIDEAN:
        if np.max(np.abs(jet.derivs[:, 2])) > 1e-12 * max(1.0, float(np.abs(x0).max())):
            raise GeometryError("Planar osculating circles need a curve in the z = 0 plane", {"t": t})
        p = jet.derivs[:, :2]
        normal = np.array([-p[1][1], p[1][0]])
        k, k_s = _cross2(p[1], p[2]), _cross2(p[1], p[3])
        k_ss = _cross2(p[2], p[3]) + _cross2(p[1], p[4])
        lift = lift_derivatives(p[:2])
        m_bar, m_bar_s = lift[0], lift[1]
        mn = 0.5 * float(p[0] @ normal)
        n_bar = np.concatenate(([mn, mn], normal))
    else:
        if abs(float(x0 @ x0) - 1.0) > 1e-9:
            raise GeometryError("Spherical osculating circles need a curve on S^2", {"t": t})
        normal = np.cross(x0, x1)
        k = _det3(x0, x1, x2)
        k_s = _det3(x0, x1, x3)
        k_ss = _det3(x0, x2, x3) + _det3(x0, x1, x4)
        m_bar = np.concatenate(([1.0], x0))
        m_bar_s = np.concatenate(([0.0], x1))
        n_bar = np.concatenate(([0.0], normal))
    gamma = DeSitterPoint.from_vector(k * m_bar + n_bar)
    return OsculatingCircle2D(
        t=float(t),
        gamma=gamma,
        gamma_dot=k_s * m_bar,
        gamma_ddot=k_ss * m_bar + k_s * m_bar_s,
        k_g=k,
        k_g_s=k_s,
        speed=jet.speed,
        speed_t=jet.speed_t,
    )


def osculating_sphere(
    c: Curve, t: float, reference: Optional[ArrayLike] = None, tol: Optional[float] = None
) -> DeSitterPoint:
    """
    Unit spacelike generator of the orthogonal complement of
    span(m̄, m̄', m̄'', m̄''').

    With a reference vector the sign maximizing <σ, reference> is chosen;
    otherwise the outward orientation <σ, n1> > 0, and for planes a positive
    first significant spatial component.
    """
    tol = get_settings().degeneracy_tol if tol is None else tol
    lift = lift_jet(c, t)
    kernel = null_space(lift[:4] @ metric(5), rcond=tol)
    if kernel.shape[1] != 1:
        raise VertexError(
            "Osculating sphere undefined: the third-order span is degenerate",
            {"t": t, "kernel_dim": int(kernel.shape[1])},
        )
    sigma = kernel[:, 0]
    norm = lorentz_form(sigma, sigma)
    if norm <= 0:
        raise VertexError("Osculating 4-space is not timelike", {"t": t, "L": norm})
    sigma = sigma / np.sqrt(norm)
    if reference is not None:
        if lorentz_form(sigma, as_vector(reference, 5)) < 0:
            sigma = -sigma
        return DeSitterPoint(sigma)
    side = lorentz_form(sigma, null_vector_n1())
    if abs(side) > 1e-9 * float(np.linalg.norm(sigma)):
        sign = np.sign(side)
    else:
        spatial = sigma[2:]
        significant = np.flatnonzero(np.abs(spatial) > 1e-9 * np.max(np.abs(spatial)))
        sign = np.sign(spatial[significant[0]])
    return DeSitterPoint(sign * sigma)


def chord_causal_types(
    samples: Sequence[Union[CirclePoint, TriVector, ArrayLike]], tol: Optional[float] = None
) -> List[CausalClass]:
    """Causal class of each chord γ(t_{i+1}) - γ(t_i) in the circle space."""
    tol = get_settings().lightlike_tol if tol is None else tol
    coords = np.array(
        [s.p if isinstance(s, (CirclePoint, TriVector)) else np.asarray(s, dtype=float) for s in samples]
    )
    out: List[CausalClass] = []
    for chord in np.diff(coords, axis=0):
        norm2 = float(chord @ chord)
        value = tri_square(chord)
        if norm2 <= np.finfo(float).tiny:
            out.append(CausalClass.ZERO)
        elif abs(value) <= tol * norm2:
            out.append(CausalClass.LIGHTLIKE)
        else:
            out.append(CausalClass.SPACELIKE if value > 0 else CausalClass.TIMELIKE)
    return out
