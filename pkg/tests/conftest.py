#!/usr/bin/env python3
"""Pytest configuration and shared fixtures."""

import json
import os
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Set test environment
os.environ["CONFORMAL_LOG_LEVEL"] = "WARNING"
os.environ["CONFORMAL_LOG_FORMAT"] = "console"

from conformal_curves.core.config import reload_settings  # noqa: E402
from conformal_curves.core.logging import setup_logging  # noqa: E402
from conformal_curves.curve import CircleCurve, Ellipse, Helix, SampledCurve, TwistedCubic  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def configure_logging():
    """Route library logs to stderr at WARNING for the whole session."""
    reload_settings()
    setup_logging("WARNING")
    yield


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def helix():
    """Helix (cos t, sin t, t) on [0, 2π]."""
    return Helix(1.0, 1.0)


@pytest.fixture
def twisted_cubic():
    """Twisted cubic (t, t², t³) on [-1, 1]."""
    return TwistedCubic()


@pytest.fixture
def ellipse():
    """Ellipse (2 cos t, sin t, 0) with vertices at multiples of π/2."""
    return Ellipse(2.0, 1.0)


@pytest.fixture
def circle():
    """Unit circle in the z = 0 plane."""
    return CircleCurve(1.0)


@pytest.fixture
def sampled_helix(helix):
    """Smoothing spline through 200 exact helix points on [0, 2π]."""
    return SampledCurve(np.array([helix.point(t) for t in np.linspace(0.0, 2 * np.pi, 200)]))


@pytest.fixture
def write_spec(temp_dir):
    """Write a curve spec to a JSON file and return its path."""

    def _write(spec, name="curve.json"):
        path = temp_dir / name
        path.write_text(spec if isinstance(spec, str) else json.dumps(spec), encoding="utf-8")
        return path

    return _write
