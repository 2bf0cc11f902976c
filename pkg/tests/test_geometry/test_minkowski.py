#!/usr/bin/env python3
"""Tests for minkowski module."""

import numpy as np
import pytest

from conformal_curves.core.exceptions import DimensionError, GeometryError, SignatureError
from conformal_curves.minkowski import (
    AT_INFINITY,
    CausalClass,
    Chart,
    LiftPoint,
    MoebiusMap,
    apply_moebius,
    boost_generator,
    causal_class,
    euclidean_to_spherical,
    identity_map,
    is_lie_algebra_element,
    lift_euclidean,
    lift_spherical,
    lorentz_form,
    lorentz_gram,
    lorentz_orthonormalize,
    metric,
    moebius_exp,
    null_vector_n1,
    orthogonal_complement,
    project_to_chart,
    random_moebius,
    rotation_generator,
    spherical_to_euclidean,
)


class TestLorentzForm:
    """Test the Lorentz form and causal classes."""

    def test_form_values(self):
        """Test signature (-, +, +, +, +)."""
        e0 = np.eye(5)[0]
        e3 = np.eye(5)[3]

        assert lorentz_form(e0, e0) == -1.0
        assert lorentz_form(e3, e3) == 1.0
        assert lorentz_form(e0, e3) == 0.0

    def test_batched(self):
        """Test leading axes are broadcast."""
        values = lorentz_form(np.eye(5), np.eye(5))

        np.testing.assert_allclose(values, [-1.0, 1.0, 1.0, 1.0, 1.0])

    def test_dimension_mismatch(self):
        """Test vectors of different length are rejected."""
        with pytest.raises(DimensionError):
            lorentz_form(np.ones(5), np.ones(4))

    @pytest.mark.parametrize(
        "vector,expected",
        [
            ([1.0, 1.0, 0.0, 0.0, 0.0], CausalClass.LIGHTLIKE),
            ([1.0, 0.0, 0.0, 0.0, 0.0], CausalClass.TIMELIKE),
            ([0.0, 1.0, 0.0, 0.0, 0.0], CausalClass.SPACELIKE),
            ([0.0, 0.0, 0.0, 0.0, 0.0], CausalClass.ZERO),
        ],
    )
    def test_causal_class(self, vector, expected):
        """Test classification by the sign of L(v)."""
        assert causal_class(vector) is expected

    def test_causal_class_tolerance(self):
        """Test non-positive tolerances are rejected."""
        with pytest.raises(ValueError, match="tol must be positive"):
            causal_class([1.0, 1.0, 0.0, 0.0, 0.0], tol=0.0)

    def test_metric_dimension(self):
        """Test only R^3_1..R^5_1 are supported."""
        assert metric(3).shape == (3, 3)
        with pytest.raises(DimensionError):
            metric(6)


class TestLightConeCharts:
    """Test lifts and projections."""

    def test_euclidean_round_trip(self):
        """Test projection inverts the lift for any positive rescaling."""
        x = np.array([0.3, -1.2, 2.0])
        lift = lift_euclidean(x)

        np.testing.assert_allclose(project_to_chart(lift.vector), x, atol=1e-14)
        np.testing.assert_allclose(project_to_chart(3.7 * lift.vector), x, atol=1e-13)
        np.testing.assert_allclose(lift.point, x)

    def test_lift_is_lightlike(self):
        """Test lifts lie on the light cone."""
        lift = lift_euclidean([1.0, 2.0, 3.0])

        assert lorentz_form(lift.vector, lift.vector) == pytest.approx(0.0, abs=1e-12)
        assert lift.vector[0] - lift.vector[1] == pytest.approx(2.0)

    def test_point_at_infinity(self):
        """Test n1 projects to the point at infinity."""
        assert project_to_chart(null_vector_n1()) is AT_INFINITY

    def test_projection_requires_lightlike(self):
        """Test timelike vectors cannot be projected."""
        with pytest.raises(SignatureError):
            project_to_chart([1.0, 0.0, 0.0, 0.0, 0.0])

    def test_lift_point_validation(self):
        """Test LiftPoint rejects non-lightlike vectors."""
        with pytest.raises(SignatureError):
            LiftPoint(np.array([1.0, 0.0, 0.0, 0.0, 0.0]))

    def test_spherical_round_trip(self):
        """Test stereographic transfer and its inverse."""
        x = np.array([1.0, 2.0, 3.0])
        on_sphere = euclidean_to_spherical(x)

        assert np.linalg.norm(on_sphere) == pytest.approx(1.0)
        np.testing.assert_allclose(spherical_to_euclidean(on_sphere), x, atol=1e-12)

    def test_infinity_to_sphere(self):
        """Test the point at infinity maps to the pole."""
        np.testing.assert_allclose(euclidean_to_spherical(AT_INFINITY), [1.0, 0.0, 0.0, 0.0])

    def test_spherical_lift(self):
        """Test (1, x) is lightlike and projects back to x."""
        x = np.array([0.0, 0.6, 0.0, 0.8])
        lift = lift_spherical(x)

        assert lorentz_form(lift.vector, lift.vector) == pytest.approx(0.0, abs=1e-15)
        np.testing.assert_allclose(project_to_chart(lift.vector, Chart.SPHERICAL), x)
        with pytest.raises(GeometryError):
            lift_spherical([0.0, 0.0, 0.0, 2.0])

    def test_spherical_projection(self):
        """Test the spherical chart divides by v0."""
        lift = lift_euclidean([0.0, 0.0, 0.0])
        np.testing.assert_allclose(
            project_to_chart(lift.vector, Chart.SPHERICAL), [-1.0, 0.0, 0.0, 0.0]
        )


class TestMoebiusGroup:
    """Test Möbius maps as Lorentz matrices."""

    def test_rejects_non_isometry(self):
        """Test matrices not preserving J are rejected."""
        with pytest.raises(GeometryError, match="does not preserve"):
            MoebiusMap(np.diag([2.0, 1.0, 1.0, 1.0, 1.0]))

    def test_inverse(self):
        """Test A^{-1} A is the identity."""
        a = random_moebius(3)

        np.testing.assert_allclose((a.inverse() @ a).matrix, identity_map().matrix, atol=1e-12)

    def test_apply_moebius(self):
        """Test the functional form agrees with the method and fixes infinity for rotations."""
        a = moebius_exp(0.4 * boost_generator(1))
        x = np.array([1.0, 2.0, 3.0])

        np.testing.assert_allclose(apply_moebius(a, x), np.exp(0.4) * x)
        np.testing.assert_allclose(apply_moebius(a, x), a.apply(x))
        assert apply_moebius(moebius_exp(rotation_generator(2, 3)), AT_INFINITY) is AT_INFINITY

    def test_random_is_deterministic(self):
        """Test seeded maps are reproducible."""
        np.testing.assert_array_equal(random_moebius(5).matrix, random_moebius(5).matrix)
        assert not np.allclose(random_moebius(5).matrix, random_moebius(6).matrix)

    def test_boost_is_dilation(self):
        """Test the boost along axis 1 dilates the Euclidean chart."""
        b = 0.3
        a = moebius_exp(b * boost_generator(1))

        np.testing.assert_allclose(a.apply([1.0, 2.0, 3.0]), np.exp(b) * np.array([1.0, 2.0, 3.0]))
        assert a.apply(AT_INFINITY) is AT_INFINITY

    def test_rotation(self):
        """Test rotation generators rotate the chart."""
        a = moebius_exp(0.5 * np.pi * rotation_generator(2, 3))

        np.testing.assert_allclose(a.apply([1.0, 0.0, 0.0]), [0.0, 1.0, 0.0], atol=1e-12)

    def test_lie_algebra(self):
        """Test membership of o(4,1)."""
        assert is_lie_algebra_element(boost_generator(2))
        assert is_lie_algebra_element(rotation_generator(1, 4))
        assert not is_lie_algebra_element(np.eye(5))

        with pytest.raises(GeometryError):
            moebius_exp(np.eye(5))

    def test_composition_order(self):
        """Test (a @ b)(x) = a(b(x))."""
        a = random_moebius(11, scale=0.2)
        b = random_moebius(12, scale=0.2)
        x = np.array([0.1, 0.2, -0.3])

        np.testing.assert_allclose((a @ b).apply(x), a.apply(b.apply(x)), atol=1e-10)


class TestSubspaces:
    """Test Lorentz-orthogonal complements and bases."""

    def test_orthogonal_complement(self):
        """Test complement rows are Lorentz-orthogonal to the span."""
        span = np.array([lift_euclidean(p).vector for p in ([0, 0, 0], [1, 0, 0], [0, 1, 0])], dtype=float)
        complement = orthogonal_complement(span)

        assert complement.shape == (2, 5)
        np.testing.assert_allclose(span @ metric() @ complement.T, 0.0, atol=1e-12)

    def test_orthonormalize_signs(self):
        """Test negative directions come first."""
        basis, signs = lorentz_orthonormalize(np.eye(5)[:3])

        np.testing.assert_allclose(signs, [-1.0, 1.0, 1.0])
        np.testing.assert_allclose(lorentz_gram(basis), np.diag(signs), atol=1e-12)

    def test_orthonormalize_degenerate(self):
        """Test lightlike spans are rejected."""
        with pytest.raises(SignatureError):
            lorentz_orthonormalize([null_vector_n1()])
