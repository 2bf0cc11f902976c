#!/usr/bin/env python3
"""Tests for sphereavg module."""

import numpy as np
import pytest

from conformal_curves.core.exceptions import GeometryError
from conformal_curves.curve import SampledCurve, tolerance_scale
from conformal_curves.minkowski import lorentz_form
from conformal_curves.sphereavg import (
    average_half_measure,
    c_star,
    c_star_quadrature,
    psi_theta,
    sphere_curve,
    sphere_speed_ratio,
    torsion_on_grid,
)


@pytest.fixture
def helix_spheres(helix):
    """Osculating spheres of the helix on [0, 1]."""
    return sphere_curve(helix, np.linspace(0.0, 1.0, 21))


class TestConstant:
    """Test the average constant."""

    def test_closed_form_matches_quadrature(self):
        """Test the beta-integral value against quadrature."""
        assert c_star() == pytest.approx(c_star_quadrature(), rel=1e-8)

    def test_value(self):
        """Test c* ≈ 0.40982."""
        assert c_star() == pytest.approx(0.40982, abs=1e-5)


class TestSphereCurve:
    """Test the curve of osculating spheres."""

    def test_helix_identities(self, helix, helix_spheres):
        """Test the Gram table and derived identities."""
        assert max(helix_spheres.table2_residuals().values()) < 1e-5
        assert helix_spheres.drill_residual() < 1e-4
        assert helix_spheres.tangent_sum_residual() < 1e-4
        assert helix_spheres.anti_isometry_residual(helix) < 1e-4

    def test_twisted_cubic_table(self, twisted_cubic):
        """Test the Gram table on a curve with varying invariants."""
        sc = sphere_curve(twisted_cubic, np.linspace(-0.3, 0.3, 13))

        assert max(sc.table2_residuals().values()) < 1e-5

    def test_sampled_helix_table(self, sampled_helix):
        """Test the Gram table of a spline fit holds to the relaxed sampled tolerance."""
        sc = sphere_curve(sampled_helix, np.linspace(1.0, 7.8, 15))

        assert max(sc.table2_residuals().values()) < 1e-5 * tolerance_scale(sampled_helix)

    def test_sampled_table_converges(self, helix):
        """Test denser samples give a smaller Gram-table residual."""
        residuals = []
        for count in (100, 400):
            points = np.array([helix.point(t) for t in np.linspace(0.0, 2 * np.pi, count)])
            sc = sphere_curve(SampledCurve(points), np.linspace(1.0, 7.8, 15))
            residuals.append(max(sc.table2_residuals().values()))

        assert residuals[1] < residuals[0]
        assert residuals[1] < 1e-3

    def test_sampled_stencil_step(self, sampled_helix, mocker):
        """Test stencils on a sampled curve use its knot-spaced step."""
        spy = mocker.spy(SampledCurve, "stencil_step")

        sphere_curve(sampled_helix, np.linspace(1.0, 2.0, 3))

        spy.assert_called_once()
        assert spy.spy_return == pytest.approx(sampled_helix.knot_spacing)

    def test_arclength_starts_at_zero(self, helix_spheres):
        """Test s̃ is increasing from 0."""
        assert helix_spheres.s[0] == 0.0
        assert np.all(np.diff(helix_spheres.s) > 0)

    def test_speed_is_torsion(self, helix, helix_spheres):
        """Test ds̃/dρ equals the conformal torsion."""
        np.testing.assert_allclose(sphere_speed_ratio(helix, helix_spheres), 1.0, rtol=1e-6)
        np.testing.assert_allclose(torsion_on_grid(helix, helix_spheres), 1.0, rtol=1e-9)

    def test_nu_is_unit(self, helix_spheres):
        """Test the spheres through the osculating circles have L = 1."""
        nu = helix_spheres.nu(0.7)

        np.testing.assert_allclose(lorentz_form(nu, nu), 1.0, atol=1e-6)

    def test_invalid_grid(self, helix):
        """Test grids must be increasing with three points."""
        with pytest.raises(ValueError):
            sphere_curve(helix, [0.0, 1.0])
        with pytest.raises(ValueError):
            sphere_curve(helix, [0.0, 1.0, 0.5])

    def test_planar_curve(self, ellipse):
        """Test a planar curve has a constant osculating sphere."""
        with pytest.raises(GeometryError):
            sphere_curve(ellipse, np.linspace(0.1, 0.5, 5))


class TestPsiCurves:
    """Test the lightlike families ψ_θ."""

    def test_de_sitter_and_lightlike(self, helix_spheres):
        """Test L(ψ) = 1 and L(ψ̇) = 0."""
        psi = psi_theta(helix_spheres, 0.3)

        np.testing.assert_allclose(lorentz_form(psi.samples.values, psi.samples.values), 1.0, atol=1e-6)
        np.testing.assert_allclose(lorentz_form(psi.dot, psi.dot), 0.0, atol=1e-4)


class TestAverage:
    """Test the θ-average of half measures."""

    def test_helix(self, helix):
        """Test the average is c* times the conformal arc-length."""
        result = average_half_measure(helix, 0.0, 1.0, theta_count=64, samples=100)

        assert result.rho == pytest.approx(np.sqrt(2.0) / 2)
        assert len(result.per_theta) == 64
        assert result.relative_error < 1e-2

    def test_theta_count(self, helix):
        """Test θ-grids smaller than 16 are rejected."""
        with pytest.raises(ValueError, match="at least 16"):
            average_half_measure(helix, 0.0, 1.0, theta_count=8)
