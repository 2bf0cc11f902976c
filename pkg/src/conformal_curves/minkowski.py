#!/usr/bin/env python3
"""
Minkowski Space and the Möbius Group

Linear algebra of R^{n+2}_1 (n = 1, 2, 3) with the Lorentz form of signature
(-, +, ..., +), the Euclidean and spherical light-cone charts, and the Möbius
group O(n+1, 1) acting on points through the light cone.

Coordinate index 0 is the timelike direction throughout.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import expm, null_space

from .core.config import get_settings
from .core.exceptions import DimensionError, GeometryError, SignatureError

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

MOEBIUS_RESIDUAL_TOL = 1e-9


class CausalClass(str, Enum):
    """Causal type of a Minkowski vector."""

    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"
    TIMELIKE = "timelike"
    ZERO = "zero"


class Chart(str, Enum):
    """Affine sections of the light cone."""

    EUCLIDEAN = "euclidean"
    SPHERICAL = "spherical"


class AtInfinity:
    """The point at infinity of the Euclidean chart (direction of n1)."""

    _instance: Optional["AtInfinity"] = None

    def __new__(cls) -> "AtInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "AT_INFINITY"

    def __reduce__(self) -> str:
        return "AT_INFINITY"


AT_INFINITY = AtInfinity()

ChartPoint = Union[FloatArray, AtInfinity]


def metric(dim: int = 5) -> FloatArray:
    """Gram matrix J = diag(-1, 1, ..., 1) of R^{dim-1}_1."""
    if dim < 3 or dim > 5:
        raise DimensionError(f"Minkowski dimension must be 3, 4 or 5, got {dim}")
    return np.diag([-1.0] + [1.0] * (dim - 1))


def null_vector_n1(dim: int = 5) -> FloatArray:
    """The lightlike vector n1 = (1, 1, 0, ..., 0), the point at infinity."""
    v = np.zeros(dim)
    v[0] = v[1] = 1.0
    return v


def as_vector(v: ArrayLike, dim: Optional[int] = None) -> FloatArray:
    """Convert input to a finite float vector, optionally of a given length."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"Expected a 1-d vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"Expected a vector of length {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError("Vector has non-finite coordinates", {"vector": arr.tolist()})
    return arr


def lorentz_form(u: ArrayLike, v: ArrayLike) -> Union[float, FloatArray]:
    """
    Lorentz inner product -u0 v0 + sum_{i>=1} u_i v_i.

    Batched over leading axes; a float is returned for a pair of 1-d vectors.
    """
    a = np.asarray(u, dtype=float)
    b = np.asarray(v, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(
            "Dimension mismatch in lorentz_form",
            {"left": a.shape[-1], "right": b.shape[-1]},
        )
    value = np.sum(a * b, axis=-1) - 2.0 * a[..., 0] * b[..., 0]
    if np.ndim(value) == 0:
        return float(value)
    return value


def lorentz_square(v: ArrayLike) -> Union[float, FloatArray]:
    """L(v) = <v, v>."""
    return lorentz_form(v, v)


def causal_class(v: ArrayLike, tol: Optional[float] = None) -> CausalClass:
    """Classify v by the sign of L(v), relative to its Euclidean square norm."""
    tol = get_settings().lightlike_tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = as_vector(v)
    norm2 = float(arr @ arr)
    if norm2 <= np.finfo(float).tiny:
        return CausalClass.ZERO
    value = lorentz_square(arr)
    if abs(value) <= tol * norm2:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if value > 0 else CausalClass.TIMELIKE


def lorentz_gram(vectors: ArrayLike) -> FloatArray:
    """Matrix of Lorentz inner products of the rows of ``vectors``."""
    x = np.atleast_2d(np.asarray(vectors, dtype=float))
    return x @ metric(x.shape[1]) @ x.T


def orthogonal_complement(vectors: ArrayLike, tol: Optional[float] = None) -> FloatArray:
    """Rows spanning the Lorentz-orthogonal complement of the row span."""
    tol = get_settings().degeneracy_tol if tol is None else tol
    x = np.atleast_2d(np.asarray(vectors, dtype=float))
    return null_space(x @ metric(x.shape[1]), rcond=tol).T


def lorentz_orthonormalize(
    vectors: ArrayLike, tol: Optional[float] = None
) -> Tuple[FloatArray, FloatArray]:
    """
    Lorentz-orthonormal basis of a non-degenerate row span.

    Returns ``(basis, signs)`` with ``<basis_i, basis_j> = signs_i delta_ij``;
    negative directions come first. Raises SignatureError when the restricted
    form is degenerate.
    """
    tol = get_settings().degeneracy_tol if tol is None else tol
    x = np.atleast_2d(np.asarray(vectors, dtype=float))
    eigenvalues, eigenvectors = np.linalg.eigh(lorentz_gram(x))
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    if scale == 0.0 or np.any(np.abs(eigenvalues) <= tol * scale):
        raise SignatureError(
            "Restricted Lorentz form is degenerate",
            {"eigenvalues": eigenvalues.tolist()},
        )
    basis = (eigenvectors.T @ x) / np.sqrt(np.abs(eigenvalues))[:, None]
    return basis, np.sign(eigenvalues)


@dataclass(frozen=True)
class LiftPoint:
    """A point of the base space as a light-cone vector in a chart."""

    vector: FloatArray
    chart: Chart = Chart.EUCLIDEAN

    def __post_init__(self) -> None:
        v = as_vector(self.vector)
        object.__setattr__(self, "vector", v)
        scale = max(1.0, float(v @ v))
        if abs(lorentz_square(v)) > 1e-10 * scale:
            raise SignatureError("Lift point is not lightlike", {"L": lorentz_square(v)})
        if self.chart is Chart.EUCLIDEAN:
            if abs(v[0] - v[1] - 2.0) > 1e-12 * scale:
                raise GeometryError("Euclidean lift must satisfy v0 - v1 = 2")
        elif abs(v[0] - 1.0) > 1e-12:
            raise GeometryError("Spherical lift must satisfy v0 = 1")

    @property
    def point(self) -> FloatArray:
        """Coordinates of the represented point in its chart."""
        if self.chart is Chart.EUCLIDEAN:
            return self.vector[2:].copy()
        return self.vector[1:].copy()


def lift_euclidean(x: ArrayLike) -> LiftPoint:
    """Lift x in R^n to (1 + x.x/4, -1 + x.x/4, x) on the light cone."""
    p = as_vector(x)
    if p.shape[0] < 1 or p.shape[0] > 3:
        raise DimensionError(f"Points must lie in R^1..R^3, got R^{p.shape[0]}")
    q = float(p @ p) / 4.0
    return LiftPoint(np.concatenate(([1.0 + q, -1.0 + q], p)), Chart.EUCLIDEAN)


def lift_spherical(x: ArrayLike, tol: float = 1e-12) -> LiftPoint:
    """Lift a point of the unit sphere S^n to (1, x)."""
    p = as_vector(x)
    if abs(float(p @ p) - 1.0) > tol:
        raise GeometryError("Spherical lift requires a unit vector", {"norm": float(np.sqrt(p @ p))})
    return LiftPoint(np.concatenate(([1.0], p)), Chart.SPHERICAL)


def project_to_chart(
    v: ArrayLike, chart: Chart = Chart.EUCLIDEAN, tol: Optional[float] = None
) -> ChartPoint:
    """
    Read the point represented by a light-cone vector.

    In the Euclidean chart the vector is rescaled by 2/(v0 - v1); directions
    with v0 - v1 ~ 0 return AT_INFINITY.
    """
    tol = get_settings().lightlike_tol if tol is None else tol
    arr = as_vector(v)
    cls = causal_class(arr, tol)
    if cls is CausalClass.ZERO:
        raise GeometryError("Cannot project the zero vector")
    if cls is not CausalClass.LIGHTLIKE:
        raise SignatureError(
            "Projection requires a lightlike vector",
            {"causal_class": cls.value, "L": lorentz_square(arr)},
        )
    if chart is Chart.SPHERICAL:
        return arr[1:] / arr[0]
    d = arr[0] - arr[1]
    if abs(d) <= tol * float(np.sqrt(arr @ arr)):
        return AT_INFINITY
    return 2.0 * arr[2:] / d


def euclidean_to_spherical(x: Union[ArrayLike, AtInfinity]) -> FloatArray:
    """Stereographic transfer R^n u {inf} -> S^n through the light cone."""
    if isinstance(x, AtInfinity):
        return np.concatenate(([1.0], np.zeros(3)))
    result = project_to_chart(lift_euclidean(x).vector, Chart.SPHERICAL)
    assert not isinstance(result, AtInfinity)
    return result


def spherical_to_euclidean(x: ArrayLike) -> ChartPoint:
    """Inverse stereographic transfer S^n -> R^n u {inf}."""
    return project_to_chart(lift_spherical(x).vector, Chart.EUCLIDEAN)


@dataclass(frozen=True)
class MoebiusMap:
    """A Möbius transformation as a matrix A with A^T J A = J."""

    matrix: FloatArray
    residual: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (3, 4, 5):
            raise DimensionError(f"Möbius matrix must be square of size 3..5, got {a.shape}")
        j = metric(a.shape[0])
        residual = float(np.max(np.abs(a.T @ j @ a - j)))
        if residual >= MOEBIUS_RESIDUAL_TOL:
            raise GeometryError(
                "Matrix does not preserve the Lorentz form", {"residual": residual}
            )
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "residual", residual)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def inverse(self) -> "MoebiusMap":
        """A^{-1} = J A^T J."""
        j = metric(self.dim)
        return MoebiusMap(j @ self.matrix.T @ j)

    def apply(self, x: Union[ArrayLike, AtInfinity]) -> ChartPoint:
        return apply_moebius(self, x)


def identity_map(dim: int = 5) -> MoebiusMap:
    return MoebiusMap(np.eye(dim))


def compose(a: MoebiusMap, b: MoebiusMap) -> MoebiusMap:
    """The map x -> a(b(x))."""
    if a.dim != b.dim:
        raise DimensionError("Cannot compose Möbius maps of different dimensions")
    return MoebiusMap(a.matrix @ b.matrix)


def apply_moebius(a: MoebiusMap, x: Union[ArrayLike, AtInfinity]) -> ChartPoint:
    """Image of x under a, computed through the Euclidean light-cone chart."""
    if isinstance(x, AtInfinity):
        v = null_vector_n1(a.dim)
    else:
        v = lift_euclidean(x).vector
        if v.shape[0] != a.dim:
            raise DimensionError("Point and map dimensions differ")
    return project_to_chart(a.matrix @ v, Chart.EUCLIDEAN)


def is_lie_algebra_element(generator: ArrayLike, tol: float = 1e-12) -> bool:
    """Check M^T J + J M = 0."""
    m = np.asarray(generator, dtype=float)
    j = metric(m.shape[0])
    scale = max(1.0, float(np.max(np.abs(m))))
    return bool(np.max(np.abs(m.T @ j + j @ m)) <= tol * scale)


def moebius_exp(generator: ArrayLike) -> MoebiusMap:
    """Exponential of an element of the Lie algebra o(n+1, 1)."""
    m = np.asarray(generator, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"Generator must be a square matrix, got {m.shape}")
    if not is_lie_algebra_element(m):
        raise GeometryError("Generator is not in o(n+1,1)")
    return MoebiusMap(expm(m))


def boost_generator(k: int, dim: int = 5) -> FloatArray:
    """Generator of the boost mixing the timelike axis with axis k."""
    if not 1 <= k < dim:
        raise DimensionError(f"Boost axis must be in 1..{dim - 1}")
    m = np.zeros((dim, dim))
    m[0, k] = m[k, 0] = 1.0
    return m


def rotation_generator(i: int, j: int, dim: int = 5) -> FloatArray:
    """Generator of the rotation in the spacelike (i, j) plane."""
    if not (1 <= i < dim and 1 <= j < dim) or i == j:
        raise DimensionError("Rotation axes must be distinct spacelike indices")
    m = np.zeros((dim, dim))
    m[i, j] = -1.0
    m[j, i] = 1.0
    return m


def random_moebius(seed: int, scale: float = 0.5, dim: int = 5) -> MoebiusMap:
    """
    Seeded random Möbius map exp(J S) with S skew and entries in [-scale, scale].
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(seed)
    u = rng.uniform(-scale, scale, size=(dim, dim))
    skew = 0.5 * (u - u.T)
    result = moebius_exp(metric(dim) @ skew)
    logger.debug("Random Möbius map generated", seed=seed, scale=scale, residual=result.residual)
    return result
