#!/usr/bin/env python3
"""
Circle Space as a Grassmannian

Oriented 3-spaces of R^5_1 in Plücker coordinates, the index-4 inner product
on Lambda^3 R^5 (= R^10_4), the Plücker relations, the minor homomorphism
Psi: O(4,1) -> O(6,4), and the anti-isometry onto oriented spacelike 2-spaces.

Coordinates are always ordered lexicographically:
trivectors 012, 013, 014, 023, 024, 034, 123, 124, 134, 234 and
bivectors 01, 02, 03, 04, 12, 13, 14, 23, 24, 34.

Author: UnityAI Team
Version: 1.0.0
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from .core.config import get_settings
from .core.exceptions import DecomposabilityError, DimensionError, SignatureError
from .minkowski import lorentz_gram, lorentz_orthonormalize, orthogonal_complement

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

TRI_INDEX: Tuple[Tuple[int, int, int], ...] = tuple(combinations(range(5), 3))
BI_INDEX: Tuple[Tuple[int, int], ...] = tuple(combinations(range(5), 2))
TRI_LABELS: Tuple[str, ...] = tuple("".join(map(str, idx)) for idx in TRI_INDEX)
BI_LABELS: Tuple[str, ...] = tuple("".join(map(str, idx)) for idx in BI_INDEX)

_TRI_ARRAY = np.array(TRI_INDEX)
_BI_ARRAY = np.array(BI_INDEX)
_TRI_POSITION: Dict[Tuple[int, ...], int] = {idx: k for k, idx in enumerate(TRI_INDEX)}

# +1 when the multi-index contains the timelike index 0, -1 otherwise.
TRI_SIGNS = np.array([1.0 if idx[0] == 0 else -1.0 for idx in TRI_INDEX])
BI_SIGNS = np.array([1.0 if idx[0] == 0 else -1.0 for idx in BI_INDEX])


def _permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def _signed_position(triple: Sequence[int]) -> Tuple[int, int]:
    """(sign, coordinate position) of an unordered triple; sign 0 if repeated."""
    if len(set(triple)) < 3:
        return 0, 0
    return _permutation_sign(triple), _TRI_POSITION[tuple(sorted(triple))]


def _build_plucker_terms() -> List[List[Tuple[float, int, int]]]:
    """
    One relation per index s: with r the largest index other than s,
    sum_k (-1)^k p_{s r j_k} p_{J \\ j_k} over J = {0..4} minus r.
    """
    relations = []
    for s in range(5):
        r = 4 if s != 4 else 3
        j_set = [j for j in range(5) if j != r]
        terms = []
        for k, j in enumerate(j_set):
            sign_a, a = _signed_position((s, r, j))
            if sign_a == 0:
                continue
            rest = [x for x in j_set if x != j]
            sign_b, b = _signed_position(rest)
            terms.append((float((-1) ** k * sign_a * sign_b), a, b))
        relations.append(terms)
    return relations


PLUCKER_TERMS = _build_plucker_terms()


class SubspaceType(str, Enum):
    """Causal type of a 3-space of R^5_1."""

    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    ISOTROPIC = "isotropic"


@dataclass(frozen=True)
class TriVector:
    """Ten Plücker coordinates of an element of Lambda^3 R^5."""

    p: FloatArray

    def __post_init__(self) -> None:
        arr = np.asarray(self.p, dtype=float)
        if arr.shape != (10,):
            raise DimensionError(f"TriVector needs 10 coordinates, got shape {arr.shape}")
        object.__setattr__(self, "p", arr)

    def __array__(self, dtype: Optional[np.dtype] = None, copy: Optional[bool] = None) -> FloatArray:
        return self.p if dtype is None else self.p.astype(dtype)

    def __add__(self, other: "TriVector") -> "TriVector":
        return TriVector(self.p + _tri_coords(other))

    def __sub__(self, other: "TriVector") -> "TriVector":
        return TriVector(self.p - _tri_coords(other))

    def __mul__(self, scalar: float) -> "TriVector":
        return TriVector(self.p * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "TriVector":
        return TriVector(self.p / float(scalar))

    def __neg__(self) -> "TriVector":
        return TriVector(-self.p)

    def norm(self) -> float:
        """Euclidean norm of the coordinates."""
        return float(np.linalg.norm(self.p))

    def as_dict(self) -> Dict[str, float]:
        return {label: float(v) for label, v in zip(TRI_LABELS, self.p)}


@dataclass(frozen=True)
class BiVector:
    """Ten coordinates of an element of Lambda^2 R^5."""

    q: FloatArray

    def __post_init__(self) -> None:
        arr = np.asarray(self.q, dtype=float)
        if arr.shape != (10,):
            raise DimensionError(f"BiVector needs 10 coordinates, got shape {arr.shape}")
        object.__setattr__(self, "q", arr)

    def __array__(self, dtype: Optional[np.dtype] = None, copy: Optional[bool] = None) -> FloatArray:
        return self.q if dtype is None else self.q.astype(dtype)

    def __neg__(self) -> "BiVector":
        return BiVector(-self.q)

    def norm(self) -> float:
        return float(np.linalg.norm(self.q))


TriLike = Union[TriVector, ArrayLike]
BiLike = Union[BiVector, ArrayLike]


def _tri_coords(x: TriLike) -> FloatArray:
    if isinstance(x, TriVector):
        return x.p
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1] != 10:
        raise DimensionError(f"Trivector coordinates must have length 10, got {arr.shape}")
    return arr


def _bi_coords(x: BiLike) -> FloatArray:
    if isinstance(x, BiVector):
        return x.q
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1] != 10:
        raise DimensionError(f"Bivector coordinates must have length 10, got {arr.shape}")
    return arr


def _rows(vectors: Sequence[ArrayLike], count: int) -> FloatArray:
    m = np.asarray(vectors, dtype=float)
    if m.shape != (count, 5):
        raise DimensionError(f"Expected {count} vectors of R^5_1, got shape {m.shape}")
    return m


def wedge3(x1: ArrayLike, x2: ArrayLike, x3: ArrayLike) -> TriVector:
    """x1 ^ x2 ^ x3: the 3x3 minors of the 3x5 matrix of the vectors."""
    m = _rows([x1, x2, x3], 3)
    minors = np.moveaxis(m[:, _TRI_ARRAY], 1, 0)
    return TriVector(np.linalg.det(minors))


def wedge2(u: ArrayLike, v: ArrayLike) -> BiVector:
    """u ^ v with q_ij = u_i v_j - u_j v_i."""
    m = _rows([u, v], 2)
    i, j = _BI_ARRAY[:, 0], _BI_ARRAY[:, 1]
    return BiVector(m[0, i] * m[1, j] - m[0, j] * m[1, i])


def tri_inner(p: TriLike, q: TriLike) -> Union[float, FloatArray]:
    """Coordinate form sum_I eps_I p_I q_I of the index-4 inner product."""
    value = np.sum(TRI_SIGNS * _tri_coords(p) * _tri_coords(q), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def tri_square(p: TriLike) -> Union[float, FloatArray]:
    return tri_inner(p, p)


def tri_inner_gram(xs: Sequence[ArrayLike], ys: Sequence[ArrayLike]) -> float:
    """Determinant form -det(<x_i, y_j>) on decomposable trivectors."""
    x = _rows(xs, 3)
    y = _rows(ys, 3)
    j = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])
    return -float(np.linalg.det(x @ j @ y.T))


def bi_inner(p: BiLike, q: BiLike) -> Union[float, FloatArray]:
    """Coordinate form of the bivector inner product, same sign rule as tri_inner."""
    value = np.sum(BI_SIGNS * _bi_coords(p) * _bi_coords(q), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def bi_inner_gram(xs: Sequence[ArrayLike], ys: Sequence[ArrayLike]) -> float:
    """-det(<x_i, y_j>) for bivectors x1^x2 and y1^y2."""
    x = _rows(xs, 2)
    y = _rows(ys, 2)
    j = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])
    return -float(np.linalg.det(x @ j @ y.T))


def plucker_residuals(p: TriLike) -> FloatArray:
    """The five quadratic Plücker residuals; all vanish iff p is decomposable."""
    coords = _tri_coords(p)
    return np.array([sum(s * coords[a] * coords[b] for s, a, b in terms) for terms in PLUCKER_TERMS])


def plucker_jacobian(p: TriLike) -> FloatArray:
    """5x10 Jacobian of plucker_residuals at p."""
    coords = _tri_coords(p)
    jac = np.zeros((5, 10))
    for row, terms in enumerate(PLUCKER_TERMS):
        for s, a, b in terms:
            jac[row, a] += s * coords[b]
            jac[row, b] += s * coords[a]
    return jac


def is_decomposable(p: TriLike, tol: Optional[float] = None) -> bool:
    """Plücker residuals below tol * |p|^2."""
    tol = get_settings().lightlike_tol if tol is None else tol
    coords = _tri_coords(p)
    scale = max(float(coords @ coords), np.finfo(float).tiny)
    return bool(np.max(np.abs(plucker_residuals(coords))) <= tol * scale)


def psi_map(a: ArrayLike) -> FloatArray:
    """
    Psi(A)_{IJ} = det A[I, J]; satisfies Psi(A)(x1^x2^x3) = Ax1^Ax2^Ax3.
    """
    m = np.asarray(a, dtype=float)
    if m.shape != (5, 5):
        raise DimensionError(f"psi_map needs a 5x5 matrix, got {m.shape}")
    rows = _TRI_ARRAY[:, None, :, None]
    cols = _TRI_ARRAY[None, :, None, :]
    return np.linalg.det(m[rows, cols])


def _wedge_map(coords: FloatArray) -> FloatArray:
    """Matrix of v -> v ^ P into Lambda^4, rows indexed by the omitted index."""
    w = np.zeros((5, 5))
    for r in range(5):
        k_set = [k for k in range(5) if k != r]
        for pos, k in enumerate(k_set):
            rest = tuple(x for x in k_set if x != k)
            w[r, k] = (-1) ** pos * coords[_TRI_POSITION[rest]]
    return w


def subspace_basis(p: TriLike) -> FloatArray:
    """
    Euclidean-orthonormal basis (3x5) of the 3-space of a decomposable
    trivector, oriented so that wedge3 of the rows is a positive multiple of p.
    """
    coords = _tri_coords(p)
    if float(coords @ coords) == 0.0:
        raise DecomposabilityError("The zero trivector spans no 3-space")
    _, _, vt = np.linalg.svd(_wedge_map(coords))
    basis = vt[2:].copy()
    if float(wedge3(*basis).p @ coords) < 0:
        basis[2] = -basis[2]
    return basis


def classify_subspace(vectors: ArrayLike, tol: Optional[float] = None) -> SubspaceType:
    """Causal type of span(vectors) from the eigenvalues of the restricted form."""
    tol = get_settings().degeneracy_tol if tol is None else tol
    x = np.atleast_2d(np.asarray(vectors, dtype=float))
    q, _ = np.linalg.qr(x.T)
    eigenvalues = np.linalg.eigvalsh(lorentz_gram(q.T))
    scale = float(np.max(np.abs(eigenvalues)))
    if np.any(np.abs(eigenvalues) <= tol * scale):
        return SubspaceType.ISOTROPIC
    return SubspaceType.TIMELIKE if np.any(eigenvalues < 0) else SubspaceType.SPACELIKE


@dataclass(frozen=True)
class CirclePoint:
    """An oriented circle: a unit decomposable trivector of a timelike 3-space."""

    tri: TriVector

    def __post_init__(self) -> None:
        coords = self.tri.p
        scale = max(1.0, float(coords @ coords))
        residual = float(np.max(np.abs(plucker_residuals(coords))))
        if residual >= 1e-9 * scale:
            raise DecomposabilityError(
                "Circle trivector violates the Plücker relations", {"residual": residual}
            )
        norm = tri_square(coords)
        if abs(norm - 1.0) >= 1e-9:
            raise SignatureError("Circle trivector must have unit norm", {"tri_inner": norm})

    @classmethod
    def from_trivector(cls, p: TriLike, normalize: bool = True, tol: Optional[float] = None) -> "CirclePoint":
        """Build a circle point, dividing by sqrt(tri_inner(p, p)) when it is positive."""
        tol = get_settings().lightlike_tol if tol is None else tol
        coords = _tri_coords(p)
        if not is_decomposable(coords, tol):
            raise DecomposabilityError("Trivector is not decomposable")
        if not normalize:
            return cls(TriVector(coords))
        norm = tri_square(coords)
        if norm <= tol * float(coords @ coords):
            raise SignatureError(
                "Only timelike 3-spaces represent circles", {"tri_inner": norm}
            )
        return cls(TriVector(coords / np.sqrt(norm)))

    @property
    def p(self) -> FloatArray:
        return self.tri.p

    def __neg__(self) -> "CirclePoint":
        return CirclePoint(-self.tri)

    def basis(self) -> FloatArray:
        return subspace_basis(self.tri)


def anti_isometry_F(circle: CirclePoint) -> BiVector:
    """
    Oriented orthogonal complement u ^ v of the 3-space of a circle, with
    (x1, x2, x3, u, v) positively oriented; <F(P), F(Q)> = -<P, Q>.
    """
    basis = subspace_basis(circle.tri)
    complement = orthogonal_complement(basis)
    if complement.shape[0] != 2:
        raise DecomposabilityError("Complement of the circle 3-space is not 2-dimensional")
    ortho, signs = lorentz_orthonormalize(complement)
    if np.any(signs < 0):
        raise SignatureError("Complement of a timelike 3-space must be spacelike")
    u, v = ortho
    if np.linalg.det(np.vstack([basis, u, v])) < 0:
        v = -v
    return wedge2(u, v)
