#!/usr/bin/env python3
"""Tests for grassmann module."""

import numpy as np
import pytest

from conformal_curves.core.exceptions import DecomposabilityError, SignatureError
from conformal_curves.grassmann import (
    TRI_LABELS,
    TRI_SIGNS,
    CirclePoint,
    SubspaceType,
    anti_isometry_F,
    bi_inner,
    bi_inner_gram,
    classify_subspace,
    is_decomposable,
    plucker_jacobian,
    plucker_residuals,
    psi_map,
    subspace_basis,
    tri_inner,
    tri_inner_gram,
    tri_square,
    wedge2,
    wedge3,
)
from conformal_curves.minkowski import lift_euclidean, null_vector_n1, random_moebius

E = np.eye(5)


def _unit(label):
    p = np.zeros(10)
    p[TRI_LABELS.index(label)] = 1.0
    return p


def _circle(*points):
    return CirclePoint.from_trivector(wedge3(*(lift_euclidean(p).vector for p in points)))


class TestWedge:
    """Test Plücker coordinates of trivectors."""

    def test_basis_vectors(self):
        """Test e_i ^ e_j ^ e_k is a coordinate vector."""
        np.testing.assert_array_equal(wedge3(E[0], E[1], E[2]).p, _unit("012"))
        np.testing.assert_array_equal(wedge3(E[1], E[3], E[4]).p, _unit("134"))

    def test_antisymmetry(self, rng):
        """Test swapping two vectors flips the sign."""
        x1, x2, x3 = rng.normal(size=(3, 5))

        np.testing.assert_allclose(wedge3(x2, x1, x3).p, -wedge3(x1, x2, x3).p, atol=1e-12)

    def test_bivector_inner_matches_gram(self, rng):
        """Test the bivector form equals -det of the Gram matrix."""
        u, v, x, y = rng.normal(size=(4, 5))

        assert bi_inner(wedge2(u, v), wedge2(x, y)) == pytest.approx(bi_inner_gram([u, v], [x, y]), rel=1e-10)
        np.testing.assert_allclose(wedge2(v, u).q, -wedge2(u, v).q)

    def test_inner_matches_gram(self, rng):
        """Test the coordinate form equals -det of the Gram matrix."""
        for _ in range(5):
            xs = rng.normal(size=(3, 5))
            ys = rng.normal(size=(3, 5))
            assert tri_inner(wedge3(*xs), wedge3(*ys)) == pytest.approx(
                tri_inner_gram(xs, ys), rel=1e-10, abs=1e-10
            )

    def test_signature(self):
        """Test timelike 3-spaces have positive square."""
        assert tri_square(_unit("012")) == 1.0
        assert tri_square(_unit("123")) == -1.0


class TestPluckerRelations:
    """Test decomposability."""

    def test_wedges_are_decomposable(self, rng):
        """Test wedge products satisfy the relations."""
        p = wedge3(*rng.normal(size=(3, 5)))

        assert is_decomposable(p)
        np.testing.assert_allclose(plucker_residuals(p), 0.0, atol=1e-12)

    def test_sum_is_not_decomposable(self):
        """Test e012 + e034 violates the relations."""
        assert not is_decomposable(_unit("012") + _unit("034"))

    def test_jacobian_rank(self, rng):
        """Test the relations cut out a 7-dimensional cone."""
        for _ in range(3):
            p = wedge3(*rng.normal(size=(3, 5)))
            assert np.linalg.matrix_rank(plucker_jacobian(p)) == 3


class TestPsiMap:
    """Test the minor homomorphism O(4,1) -> O(6,4)."""

    def test_wedge_compatibility(self, rng):
        """Test Psi(A)(x1^x2^x3) = Ax1^Ax2^Ax3."""
        a = random_moebius(2).matrix
        xs = rng.normal(size=(3, 5))

        np.testing.assert_allclose(psi_map(a) @ wedge3(*xs).p, wedge3(*(xs @ a.T)).p, atol=1e-10)

    def test_homomorphism(self):
        """Test Psi(AB) = Psi(A) Psi(B)."""
        a = random_moebius(3).matrix
        b = random_moebius(4).matrix

        np.testing.assert_allclose(psi_map(a @ b), psi_map(a) @ psi_map(b), atol=1e-10)

    def test_preserves_index_four_form(self):
        """Test Psi(A) lies in O(6,4)."""
        psi = psi_map(random_moebius(9).matrix)
        signs = np.diag(TRI_SIGNS)

        np.testing.assert_allclose(psi.T @ signs @ psi, signs, atol=1e-10)


class TestSubspaces:
    """Test bases and causal types of 3-spaces."""

    def test_basis_orientation(self, rng):
        """Test the basis spans p with positive orientation."""
        p = wedge3(*rng.normal(size=(3, 5)))
        basis = subspace_basis(p)
        q = wedge3(*basis)

        np.testing.assert_allclose(basis @ basis.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(q.p / q.norm(), p.p / p.norm(), atol=1e-10)

    def test_zero_trivector(self):
        """Test the zero trivector has no 3-space."""
        with pytest.raises(DecomposabilityError):
            subspace_basis(np.zeros(10))

    @pytest.mark.parametrize(
        "vectors,expected",
        [
            ([E[0], E[1], E[2]], SubspaceType.TIMELIKE),
            ([E[1], E[2], E[3]], SubspaceType.SPACELIKE),
            ([null_vector_n1(), E[2], E[3]], SubspaceType.ISOTROPIC),
        ],
    )
    def test_classify(self, vectors, expected):
        """Test causal types from the restricted form."""
        assert classify_subspace(vectors) is expected


class TestCirclePoint:
    """Test oriented circles as unit trivectors."""

    def test_circle_through_points(self):
        """Test three lifted points span a timelike 3-space."""
        circle = _circle([1, 0, 0], [0, 1, 0], [-1, 0, 0])

        assert tri_square(circle.p) == pytest.approx(1.0)
        assert circle.basis().shape == (3, 5)

    def test_rejects_non_decomposable(self):
        """Test the Plücker relations are enforced."""
        with pytest.raises(DecomposabilityError):
            CirclePoint.from_trivector(_unit("012") + _unit("034"))

    def test_rejects_spacelike(self):
        """Test spacelike 3-spaces are not circles."""
        with pytest.raises(SignatureError):
            CirclePoint.from_trivector(_unit("123"))


class TestAntiIsometry:
    """Test the complement map onto spacelike 2-spaces."""

    def test_reverses_inner_product(self):
        """Test <F(P), F(Q)> = -<P, Q>."""
        p = _circle([1, 0, 0], [0, 1, 0], [-1, 0, 0])
        q = _circle([1, 0.2, 0], [0, 1, 0.3], [-1, 0, 0.1])

        assert bi_inner(anti_isometry_F(p), anti_isometry_F(q)) == pytest.approx(
            -tri_inner(p.p, q.p), abs=1e-10
        )
        assert bi_inner(anti_isometry_F(p), anti_isometry_F(p)) == pytest.approx(-1.0)

    def test_reversed_orientation(self):
        """Test F(-P) = -F(P)."""
        p = _circle([0, 0, 0], [1, 0, 0], [0, 0, 1])

        np.testing.assert_allclose(anti_isometry_F(-p).q, -anti_isometry_F(p).q, atol=1e-12)
