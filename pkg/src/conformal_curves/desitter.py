#!/usr/bin/env python3
"""
De Sitter Space of Oriented Spheres

Unit spacelike vectors of R^{n+2}_1 represent oriented codimension-1 spheres
(and planes). This module converts between Euclidean sphere data and de
Sitter points, measures the Lorentz separation of two spheres and
intersects spheres with circles and point pairs through the light cone.

Orientation: the outward-oriented sphere of center c and radius r is
k m + n with n the lifted outward normal at a point m of the sphere and
k = -1/r, which gives ((r^2 - |c|^2 - 4)/4r, (r^2 - |c|^2 + 4)/4r, -c/r).
Reversing the orientation negates the vector.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import null_space

from .core.config import get_settings
from .core.exceptions import (
    DegenerateIntersectionError,
    DimensionError,
    GeometryError,
    SignatureError,
)
from .minkowski import (
    Chart,
    ChartPoint,
    LiftPoint,
    MoebiusMap,
    as_vector,
    lift_euclidean,
    lorentz_form,
    lorentz_square,
    metric,
    project_to_chart,
)

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class DeSitterPoint:
    """An oriented sphere as a unit spacelike vector."""

    vector: FloatArray

    def __post_init__(self) -> None:
        v = as_vector(self.vector)
        if v.shape[0] not in (3, 4, 5):
            raise DimensionError(f"De Sitter points live in R^3_1..R^5_1, got length {v.shape[0]}")
        norm = lorentz_square(v)
        if abs(norm - 1.0) >= 1e-9 * max(1.0, float(v @ v)):
            raise SignatureError("De Sitter point must satisfy <v, v> = 1", {"L": norm})
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_vector(cls, v: ArrayLike, normalize: bool = True) -> "DeSitterPoint":
        """Normalize a spacelike vector onto the de Sitter quadric."""
        arr = as_vector(v)
        if not normalize:
            return cls(arr)
        norm = lorentz_square(arr)
        if norm <= get_settings().lightlike_tol * float(arr @ arr):
            raise SignatureError("Only spacelike vectors represent spheres", {"L": norm})
        return cls(arr / np.sqrt(norm))

    def __neg__(self) -> "DeSitterPoint":
        return DeSitterPoint(-self.vector)

    def transform(self, a: MoebiusMap) -> "DeSitterPoint":
        """Image A sigma of the sphere under a Möbius map."""
        return DeSitterPoint(a.matrix @ self.vector)


@dataclass(frozen=True)
class EuclideanSphere:
    """Round sphere in R^3 with orientation +1 (outward normal) or -1."""

    center: FloatArray
    radius: float
    orientation: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_vector(self.center, 3))
        if not self.radius > 0 or not np.isfinite(self.radius):
            raise GeometryError("Sphere radius must be positive", {"radius": self.radius})
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


@dataclass(frozen=True)
class Plane:
    """Plane {x : normal . x = offset}, oriented by its unit normal."""

    normal: FloatArray
    offset: float = 0.0

    def __post_init__(self) -> None:
        n = as_vector(self.normal, 3)
        if abs(float(np.linalg.norm(n)) - 1.0) > 1e-12:
            raise GeometryError("Plane normal must be a unit vector")
        object.__setattr__(self, "normal", n)


SphereLike = Union[EuclideanSphere, Plane]


class SeparationKind(str, Enum):
    """Causal type of the geodesic joining two sphere points."""

    INTERSECTING = "intersecting"
    TANGENT = "tangent"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class LorentzSeparation:
    """Intersection angle or Lorentz distance of two oriented spheres."""

    kind: SeparationKind
    value: float

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("separation value must be non-negative")
        if self.kind is SeparationKind.INTERSECTING and self.value > np.pi + 1e-12:
            raise ValueError("intersection angle must lie in [0, pi]")


@dataclass(frozen=True)
class IntersectionResult:
    """Light-cone directions common to a sphere and a subspace."""

    points: Tuple[FloatArray, ...] = field(default_factory=tuple)
    degenerate: bool = False

    @property
    def count(self) -> int:
        return len(self.points)

    def project(self, chart: Chart = Chart.EUCLIDEAN) -> Tuple[ChartPoint, ...]:
        return tuple(project_to_chart(p, chart) for p in self.points)

    def require_transversal(self) -> "IntersectionResult":
        """Raise on a tangential (double-root) incidence."""
        if self.degenerate:
            raise DegenerateIntersectionError("Sphere meets the subspace tangentially")
        return self


def lifted_normal(m: ArrayLike, n: ArrayLike) -> FloatArray:
    """n-bar = ((m.n)/2, (m.n)/2, n) for a unit vector n attached at m."""
    point = as_vector(m)
    normal = as_vector(n, point.shape[0])
    mn = 0.5 * float(point @ normal)
    return np.concatenate(([mn, mn], normal))


def sphere_from_curvature_normal(
    m: Union[LiftPoint, ArrayLike],
    n_lift: ArrayLike,
    k_g: float,
    tol: Optional[float] = None,
) -> DeSitterPoint:
    """sigma = k_g m + n for a light-cone point m and a unit normal n orthogonal to it."""
    tol = 1e-9 if tol is None else tol
    mv = m.vector if isinstance(m, LiftPoint) else as_vector(m)
    nv = as_vector(n_lift, mv.shape[0])
    scale = max(1.0, float(mv @ mv))
    violations = {
        "L(m)": abs(lorentz_square(mv)) / scale,
        "<m,n>": abs(lorentz_form(mv, nv)) / np.sqrt(scale),
        "L(n)-1": abs(lorentz_square(nv) - 1.0),
    }
    if max(violations.values()) > tol:
        raise GeometryError("Curvature/normal data violate the preconditions", violations)
    return DeSitterPoint(k_g * mv + nv)


def sphere_to_desitter(s: SphereLike, direction: Optional[ArrayLike] = None) -> DeSitterPoint:
    """
    De Sitter point of a sphere or plane, assembled at one point of it.

    ``direction`` selects the point center + r * direction used for the
    assembly; the result does not depend on it.
    """
    if isinstance(s, Plane):
        m = s.offset * s.normal
        return DeSitterPoint(lifted_normal(m, s.normal))
    u = np.array([1.0, 0.0, 0.0]) if direction is None else as_vector(direction, 3)
    u = u / np.linalg.norm(u)
    m = s.center + s.radius * u
    sigma = sphere_from_curvature_normal(lift_euclidean(m), lifted_normal(m, u), -1.0 / s.radius)
    return sigma if s.orientation == 1 else -sigma


def desitter_to_sphere(sigma: DeSitterPoint, tol: float = 1e-12) -> SphereLike:
    """Recover the Euclidean sphere (or plane) of a 5-dimensional de Sitter point."""
    v = sigma.vector
    if v.shape[0] != 5:
        raise DimensionError("Euclidean rendering needs a vector of R^5_1")
    a, b, w = v[0], v[1], v[2:]
    gap = b - a
    if abs(gap) <= tol * max(1.0, float(np.linalg.norm(v))):
        norm = float(np.linalg.norm(w))
        return Plane(w / norm, float(2.0 * a / norm))
    orientation = 1 if gap > 0 else -1
    radius = 2.0 / abs(gap)
    center = -orientation * radius * w
    return EuclideanSphere(center, radius, orientation)


def is_incident(sigma: DeSitterPoint, x: ArrayLike, tol: Optional[float] = None) -> bool:
    """True when the point x lies on the sphere of sigma."""
    tol = get_settings().circle_tol if tol is None else tol
    lift = lift_euclidean(x).vector
    scale = float(np.linalg.norm(lift) * np.linalg.norm(sigma.vector))
    return abs(lorentz_form(sigma.vector, lift)) <= tol * max(1.0, scale)


def lorentz_separation(
    s1: DeSitterPoint, s2: DeSitterPoint, tol: Optional[float] = None
) -> LorentzSeparation:
    """Angle of intersecting spheres, or Lorentz distance of disjoint ones."""
    tol = get_settings().lightlike_tol if tol is None else tol
    v1, v2 = s1.vector, s2.vector
    scale = max(1.0, float(np.linalg.norm(v1)), float(np.linalg.norm(v2)))
    c = lorentz_form(v1, v2)
    if np.linalg.norm(v1 - v2) <= tol * scale or np.linalg.norm(v1 + v2) <= tol * scale:
        return LorentzSeparation(SeparationKind.INTERSECTING, float(np.arccos(np.clip(c, -1.0, 1.0))))
    if abs(abs(c) - 1.0) <= tol * scale**2:
        return LorentzSeparation(SeparationKind.TANGENT, 0.0)
    if abs(c) < 1.0:
        return LorentzSeparation(SeparationKind.INTERSECTING, float(np.arccos(c)))
    return LorentzSeparation(SeparationKind.DISJOINT, float(np.arccosh(abs(c))))


def _span_basis(vectors: Sequence[ArrayLike], tol: float) -> FloatArray:
    m = np.atleast_2d(np.asarray(vectors, dtype=float))
    _, s, vt = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return vt[:rank]


def incidence_intersection(
    s: DeSitterPoint,
    subspace: Sequence[ArrayLike],
    tol: Optional[float] = None,
) -> IntersectionResult:
    """
    Light-cone directions in span(subspace) lying on the sphere s.

    A 3-space (circle) gives 0 or 2 directions; a 2-space (point pair) gives
    0 directions unless a point lies on the sphere. Double roots are
    returned with ``degenerate=True``.
    """
    tol = get_settings().lightlike_tol if tol is None else tol
    basis = _span_basis(subspace, get_settings().degeneracy_tol)
    if basis.shape[0] not in (2, 3) or basis.shape[1] != s.vector.shape[0]:
        raise DimensionError(
            "Subspace must span a 2- or 3-dimensional space of the sphere's ambient space",
            {"rank": int(basis.shape[0])},
        )
    constraint = basis @ metric(basis.shape[1]) @ s.vector
    if np.linalg.norm(constraint) <= tol * float(np.linalg.norm(s.vector)):
        raise DegenerateIntersectionError("Subspace lies on the sphere's orthogonal complement")
    w = null_space(constraint[None, :]).T @ basis

    if w.shape[0] == 1:
        vec = w[0]
        if abs(lorentz_square(vec)) <= tol * float(vec @ vec):
            return IntersectionResult((vec,), degenerate=True)
        return IntersectionResult()

    gram = w @ metric(w.shape[1]) @ w.T
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    scale = float(np.max(np.abs(eigenvalues)))
    small = np.abs(eigenvalues) <= tol * scale
    if scale == 0.0 or np.all(small):
        raise DegenerateIntersectionError("Intersection space is totally isotropic")
    if np.any(small):
        kernel = eigenvectors[:, int(np.argmin(np.abs(eigenvalues)))] @ w
        return IntersectionResult((kernel,), degenerate=True)
    lo, hi = eigenvalues
    if lo < 0 < hi:
        a = np.sqrt(hi) * eigenvectors[:, 0]
        b = np.sqrt(-lo) * eigenvectors[:, 1]
        return IntersectionResult(((a + b) @ w, (a - b) @ w))
    return IntersectionResult()


def point_pair_sphere(
    points: Sequence[ArrayLike],
    subspace: Sequence[ArrayLike],
    align: Optional[ArrayLike] = None,
) -> DeSitterPoint:
    """
    The 0-sphere of a circle: unit vector of the circle's 3-space orthogonal
    to two of its light directions. ``align`` fixes the sign.
    """
    basis = _span_basis(subspace, get_settings().degeneracy_tol)
    if basis.shape[0] != 3:
        raise DimensionError("A circle is spanned by a 3-space")
    pair = np.asarray(points, dtype=float)
    coefficients = null_space(pair @ metric(basis.shape[1]) @ basis.T)
    if coefficients.shape[1] != 1:
        raise GeometryError("Point pair does not determine a 0-sphere")
    tau = DeSitterPoint.from_vector(coefficients[:, 0] @ basis)
    if align is not None and lorentz_form(tau.vector, as_vector(align)) < 0:
        return -tau
    return tau
