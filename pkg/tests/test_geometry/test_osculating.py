#!/usr/bin/env python3
"""Tests for osculating module."""

import numpy as np
import pytest

from conformal_curves.core.exceptions import ReconstructionError
from conformal_curves.curve import StereographicCurve
from conformal_curves.desitter import EuclideanSphere, Plane, desitter_to_sphere
from conformal_curves.grassmann import TRI_LABELS, tri_square
from conformal_curves.minkowski import CausalClass, Chart, lorentz_form
from conformal_curves.osculating import (
    CircleGeometry,
    LineGeometry,
    burstall_check,
    burstall_matrix,
    chord_causal_types,
    circle_from_geometry,
    circle_geometry,
    circle_through,
    osculating_circle,
    osculating_circle_2d,
    osculating_sphere,
    reconstruct_curve,
    tangent_circle_first,
    tangent_circle_second,
    tangent_from_matrix,
    tangent_is_admissible,
    vertex_conditions,
)


class TestCircleThrough:
    """Test circles through three points."""

    def test_unit_circle(self):
        """Test counterclockwise points give the upward normal."""
        g = circle_geometry(circle_through([1, 0, 0], [0, 1, 0], [-1, 0, 0]))

        assert isinstance(g, CircleGeometry)
        np.testing.assert_allclose(g.center, [0.0, 0.0, 0.0], atol=1e-9)
        assert g.radius == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(g.normal, [0.0, 0.0, 1.0], atol=1e-9)

    def test_collinear_points(self):
        """Test collinear points give a line."""
        g = circle_geometry(circle_through([0, 0, 0], [1, 0, 0], [2, 0, 0]))

        assert isinstance(g, LineGeometry)
        assert abs(g.direction[0]) == pytest.approx(1.0, abs=1e-9)
        assert abs(g.point[1]) < 1e-9 and abs(g.point[2]) < 1e-9

    def test_geometry_round_trip(self):
        """Test circle_geometry inverts circle_from_geometry."""
        normal = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
        original = CircleGeometry(np.array([1.0, 2.0, 3.0]), 0.5, normal)
        g = circle_geometry(circle_from_geometry(original))

        np.testing.assert_allclose(g.center, original.center, atol=1e-8)
        assert g.radius == pytest.approx(0.5, abs=1e-8)
        np.testing.assert_allclose(g.normal, normal, atol=1e-8)


class TestOsculatingCircle:
    """Test the lightlike curve of osculating circles."""

    def test_helix(self, helix):
        """Test center and radius 1/κ = 2 at t = 0."""
        g = circle_geometry(osculating_circle(helix, 0.0).gamma)

        np.testing.assert_allclose(g.center, [-1.0, 0.0, 0.0], atol=1e-8)
        assert g.radius == pytest.approx(2.0, abs=1e-8)

    def test_circle_is_its_own_osculating_circle(self, circle):
        """Test a circle osculates itself."""
        g = circle_geometry(osculating_circle(circle, 1.0).gamma)

        np.testing.assert_allclose(g.center, [0.0, 0.0, 0.0], atol=1e-8)
        assert g.radius == pytest.approx(1.0, abs=1e-8)

    def test_tangent_is_lightlike(self, helix, twisted_cubic):
        """Test γ̇ is lightlike and decomposable."""
        for curve, t in ((helix, 0.7), (twisted_cubic, 0.3)):
            sample = osculating_circle(curve, t)
            assert tangent_is_admissible(sample.gamma_dot)
            assert tri_square(sample.gamma.p) == pytest.approx(1.0)

    def test_tangent_circles_converge(self, helix):
        """Test tangent circles approach the osculating circle."""
        gamma = osculating_circle(helix, 0.5).gamma
        first = tangent_circle_first(helix, 0.5, 0.5 + 1e-3)
        second = tangent_circle_second(helix, 0.5 - 1e-3, 0.5)

        for circle in (first, second):
            assert min(np.linalg.norm(circle.p - gamma.p), np.linalg.norm(circle.p + gamma.p)) < 1e-2


class TestVertexConditions:
    """Test the three vertex conditions."""

    def test_ellipse_vertex(self, ellipse):
        """Test all three conditions hold at a vertex."""
        conditions = vertex_conditions(osculating_circle(ellipse, 0.0))

        assert conditions.is_vertex
        assert conditions.agree

    def test_ellipse_regular_point(self, ellipse):
        """Test none holds away from the vertices."""
        conditions = vertex_conditions(osculating_circle(ellipse, 0.7))

        assert not conditions.tangent_vanishes
        assert not conditions.half_length_vanishes
        assert not conditions.rank_deficient
        assert conditions.agree


class TestTangentCriterion:
    """Test the matrix criterion against the direct test."""

    def test_helix_tangent(self, helix):
        """Test a genuine tangent passes both tests."""
        sample = osculating_circle(helix, 1.2)

        assert burstall_check(sample.gamma, sample.gamma_dot)
        assert tangent_is_admissible(sample.gamma_dot)

    def test_admissible_matrix(self, helix):
        """Test a rank-one matrix with null rows is admissible."""
        gamma = osculating_circle(helix, 0.0).gamma
        a = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0]])
        tangent = tangent_from_matrix(gamma, a)

        assert burstall_check(gamma, tangent)
        assert tangent_is_admissible(tangent)
        np.testing.assert_allclose(burstall_matrix(gamma, tangent)[0], a, atol=1e-10)

    def test_random_matrices_agree(self, helix, rng):
        """Test both tests reject generic tangents."""
        gamma = osculating_circle(helix, 0.3).gamma
        for _ in range(5):
            tangent = tangent_from_matrix(gamma, rng.normal(size=(2, 3)))
            assert burstall_check(gamma, tangent) == tangent_is_admissible(tangent)
            assert not tangent_is_admissible(tangent)


class TestReconstruction:
    """Test curve recovery from circle families."""

    def test_analytic_tangents(self, helix):
        """Test the helix is recovered from its osculating circles."""
        params = np.linspace(0.1, 2.0, 15)
        points = reconstruct_curve([osculating_circle(helix, t) for t in params])

        assert len(points) == len(params)
        for t, x in points:
            np.testing.assert_allclose(x, helix.point(t), atol=1e-6)

    def test_finite_differences(self, helix):
        """Test recovery from sampled circles on a uniform grid."""
        params = np.linspace(0.0, 2.0, 81)
        samples = [(t, osculating_circle(helix, t).gamma) for t in params]
        points = reconstruct_curve(samples, kernel_tol=1e-4)

        assert len(points) == len(params) - 4
        for t, x in points:
            np.testing.assert_allclose(x, helix.point(t), atol=1e-3)

    def test_constant_family(self):
        """Test a constant family is rejected."""
        circle = circle_through([1, 0, 0], [0, 1, 0], [-1, 0, 0])

        with pytest.raises(ReconstructionError):
            reconstruct_curve([(t, circle) for t in np.linspace(0.0, 1.0, 5)])

    def test_empty(self):
        """Test an empty family gives no points."""
        assert reconstruct_curve([]) == []


class TestPlanarCircles:
    """Test osculating circles in R^4_1."""

    def test_euclidean_chart(self, ellipse):
        """Test the geodesic curvature 2 at the vertex (2, 0)."""
        sample = osculating_circle_2d(ellipse, 0.0)

        assert sample.k_g == pytest.approx(2.0)
        assert sample.k_g_s == pytest.approx(0.0, abs=1e-12)
        assert lorentz_form(sample.gamma.vector, sample.gamma.vector) == pytest.approx(1.0)

    def test_tangent_is_lightlike(self, ellipse):
        """Test γ' = k_g' m̄ is lightlike."""
        sample = osculating_circle_2d(ellipse, 0.4)

        assert lorentz_form(sample.gamma_dot, sample.gamma_dot) == pytest.approx(0.0, abs=1e-12)
        assert abs(sample.k_g_s) > 1e-3

    def test_spherical_chart_agrees(self, ellipse):
        """Test the stereographic image has the same osculating circle."""
        planar = osculating_circle_2d(ellipse, 0.4)
        spherical = osculating_circle_2d(StereographicCurve(ellipse), 0.4, Chart.SPHERICAL)

        assert abs(lorentz_form(planar.gamma.vector, spherical.gamma.vector)) == pytest.approx(
            1.0, abs=1e-9
        )


class TestOsculatingSphere:
    """Test osculating spheres."""

    @pytest.mark.parametrize("t", [0.0, 0.8, 2.5])
    def test_helix(self, helix, t):
        """Test center (-cos t, -sin t, t) and radius 2."""
        sphere = desitter_to_sphere(osculating_sphere(helix, t))

        assert isinstance(sphere, EuclideanSphere)
        np.testing.assert_allclose(sphere.center, [-np.cos(t), -np.sin(t), t], atol=1e-6)
        assert sphere.radius == pytest.approx(2.0, abs=1e-6)
        assert sphere.orientation == 1

    def test_planar_curve(self, ellipse):
        """Test the osculating sphere of a planar curve is its plane."""
        plane = desitter_to_sphere(osculating_sphere(ellipse, 0.3))

        assert isinstance(plane, Plane)
        assert abs(plane.normal[2]) == pytest.approx(1.0)
        assert plane.offset == pytest.approx(0.0, abs=1e-9)


class TestChordCausalTypes:
    """Test classification of chords in the circle space."""

    def test_synthetic(self):
        """Test spacelike, timelike and zero chords."""
        zero = np.zeros(10)
        e012 = np.eye(10)[TRI_LABELS.index("012")]
        e123 = np.eye(10)[TRI_LABELS.index("123")]

        types = chord_causal_types([zero, e012, e012, e012 + e123])

        assert types == [CausalClass.SPACELIKE, CausalClass.ZERO, CausalClass.TIMELIKE]

    def test_nearby_osculating_circles_are_timelike(self, helix):
        """Test chords of the osculating-circle curve are timelike."""
        samples = [osculating_circle(helix, t).gamma for t in np.linspace(0.0, 1.0, 11)]

        assert all(kind is CausalClass.TIMELIKE for kind in chord_causal_types(samples))
