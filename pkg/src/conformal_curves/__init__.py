"""
conformal-curves

Conformal invariants of space curves computed in the light-cone model of
Möbius geometry: lifts to R^5_1, osculating circles in the Grassmannian of
timelike 3-spaces, osculating spheres in de Sitter space, conformal
arc-length, half-dimensional measures and cross-ratio constructions.

Author: UnityAI Team
Version: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "UnityAI Team"

from .core.exceptions import ConformalError
from .curve import (
    CircleCurve,
    Curve,
    Ellipse,
    Helix,
    MoebiusImageCurve,
    SampledCurve,
    SeriesCurve,
    StereographicCurve,
    TorsionFormula,
    TwistedCubic,
    conformal_arclength,
    conformal_arclength_element,
    conformal_torsion,
    frenet,
    is_vertex,
    load_curve,
)
from .halfmeasure import convergence_order, osculating_circle_curve, polygonal_half_measure
from .osculating import osculating_circle, osculating_sphere
from .sphereavg import average_half_measure, c_star

__all__ = [
    "__version__",
    "ConformalError",
    "Curve",
    "Helix",
    "CircleCurve",
    "Ellipse",
    "TwistedCubic",
    "SeriesCurve",
    "SampledCurve",
    "MoebiusImageCurve",
    "StereographicCurve",
    "TorsionFormula",
    "load_curve",
    "frenet",
    "conformal_arclength",
    "conformal_arclength_element",
    "conformal_torsion",
    "is_vertex",
    "osculating_circle",
    "osculating_sphere",
    "polygonal_half_measure",
    "convergence_order",
    "osculating_circle_curve",
    "average_half_measure",
    "c_star",
]
