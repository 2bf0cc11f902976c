#!/usr/bin/env python3
"""
Property Checks

Named identity and invariance checks run by the ``check`` command. Each
check returns a CheckResult with the measured value and the tolerance it
was held to; checks that need vertex-free input report SKIPPED on curves
that have vertices instead of failing.

Author: UnityAI Team
Version: 1.0.0
"""

from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import structlog
from numpy.typing import NDArray

from .confangle import sphere_pair_closure
from .core.exceptions import ConformalError, DomainError, GeometryError, VertexError
from .curve import (
    Curve,
    CurveKind,
    MoebiusImageCurve,
    conformal_arclength,
    conformal_arclength_element,
    is_vertex,
    table1_residuals,
    tolerance_scale,
)
from .desitter import EuclideanSphere
from .grassmann import subspace_basis, tri_inner
from .minkowski import AT_INFINITY, AtInfinity, MoebiusMap, lorentz_orthonormalize, random_moebius
from .models import CheckResult, CheckStatus
from .numerics import STENCIL_OFFSETS
from .osculating import (
    burstall_check,
    osculating_circle,
    tangent_from_matrix,
    tangent_is_admissible,
    vertex_conditions,
)
from .sphereavg import average_half_measure, sphere_curve

# Setup structured logging
logger = structlog.get_logger(__name__)

FloatArray = NDArray[np.float64]

CheckFn = Callable[["CheckContext"], CheckResult]


class CheckContext:
    """
    Curve, sampling grid and seed shared by the checks of one run.

    ``vertex_tol`` overrides the curve's default vertex tolerance. Every
    identity tolerance passes through ``tolerance`` so that sampled curves
    are held to a relaxed bound.
    """

    def __init__(
        self,
        curve: Curve,
        samples: int,
        seed: int,
        corrupt_metric: bool = False,
        vertex_tol: Optional[float] = None,
    ):
        self.curve = curve
        self.samples = samples
        self.seed = seed
        self.corrupt_metric = corrupt_metric
        self.vertex_tol = vertex_tol
        self.scale = tolerance_scale(curve)
        a, b = curve.domain
        self.grid = np.linspace(a, b, samples, endpoint=not curve.closed)
        self._vertices: Optional[NDArray[np.bool_]] = None

    @property
    def vertices(self) -> NDArray[np.bool_]:
        if self._vertices is None:
            self._vertices = np.array([self.is_vertex(self.curve, t) for t in self.grid])
        return self._vertices

    def is_vertex(self, curve: Curve, t: float) -> bool:
        return is_vertex(curve, t, self.vertex_tol)

    def tolerance(self, base: float) -> float:
        return base * self.scale

    def rng(self, offset: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)


def _result(name: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    status = CheckStatus.PASS if np.isfinite(value) and value < tolerance else CheckStatus.FAIL
    return CheckResult(name=name, status=status, value=float(value), tolerance=tolerance, detail=detail)


def _skipped(name: str, detail: str) -> CheckResult:
    return CheckResult(name=name, status=CheckStatus.SKIPPED, detail=detail)


def check_conformal_arclength_identity(ctx: CheckContext) -> CheckResult:
    """dρ/dt = |L(γ_tt)|^{1/4} at every non-vertex sample."""
    name = "conformal_arclength_identity"
    tol = ctx.tolerance(1e-7)
    regular = ctx.grid[~ctx.vertices]
    if regular.size == 0:
        return _skipped(name, "every sample is a vertex")
    inner = (lambda p, q: float(p.p @ q.p)) if ctx.corrupt_metric else tri_inner
    worst = 0.0
    for t in regular:
        element = conformal_arclength_element(ctx.curve, t)
        _, gamma_tt = osculating_circle(ctx.curve, t).parametric_derivatives()
        quartic = abs(float(inner(gamma_tt, gamma_tt))) ** 0.25
        worst = max(worst, abs(element - quartic) / element)
    return _result(name, worst, tol, f"{regular.size} samples")


def _pole_clearance(moebius: MoebiusMap, points: FloatArray) -> float:
    pole = moebius.inverse().apply(AT_INFINITY)
    if isinstance(pole, AtInfinity):
        return float("inf")
    return float(np.min(np.linalg.norm(points - pole, axis=1)))


def check_moebius_invariance(
    ctx: CheckContext, maps: int = 20, points: int = 25, clearance: float = 0.5
) -> CheckResult:
    """
    ρ and vertex flags are unchanged under seeded random Möbius maps.

    Maps sending a point within ``clearance`` of the sampled curve to
    infinity are skipped.
    """
    name = "moebius_invariance"
    tol = ctx.tolerance(1e-6)
    c = ctx.curve
    a, b = c.domain
    grid = np.linspace(a, b, points)
    rho = conformal_arclength(c, a, b)
    flags = [ctx.is_vertex(c, t) for t in grid]

    curve_points = np.array([c.point(t) for t in ctx.grid])
    worst, used, seed = 0.0, 0, ctx.seed
    while used < maps and seed < ctx.seed + 10 * maps:
        moebius = random_moebius(seed, 0.5)
        seed += 1
        if _pole_clearance(moebius, curve_points) < clearance:
            continue
        image = MoebiusImageCurve(c, moebius)
        try:
            image_flags = [ctx.is_vertex(image, t) for t in grid]
            image_rho = conformal_arclength(image, a, b)
        except DomainError:
            continue
        used += 1
        if image_flags != flags:
            return CheckResult(
                name=name,
                status=CheckStatus.FAIL,
                tolerance=tol,
                detail=f"vertex flags differ under map seed {seed - 1}",
            )
        worst = max(worst, abs(image_rho - rho) / max(abs(rho), 1.0))
    if used == 0:
        return _skipped(name, "every sampled map sends the curve through infinity")
    return _result(name, worst, tol, f"{used} maps")


def check_vertex_characterization(ctx: CheckContext) -> CheckResult:
    """The three vertex conditions agree at every sample."""
    name = "vertex_characterization"
    tol = ctx.tolerance(1e-6)
    disagreements = sum(
        0 if vertex_conditions(osculating_circle(ctx.curve, t), tol).agree else 1 for t in ctx.grid
    )
    return _result(name, float(disagreements), 0.5, f"{ctx.grid.size} samples")


def _random_tangent_matrix(rng: np.random.Generator, eta: FloatArray, exact: bool) -> FloatArray:
    if exact:
        # a null row vector of the signature eta, scaled into both rows
        spatial = np.flatnonzero(eta > 0)
        angle = rng.uniform(0.0, 2.0 * np.pi)
        null = np.zeros(3)
        null[np.flatnonzero(eta < 0)[0]] = 1.0
        null[spatial[0]], null[spatial[1]] = np.cos(angle), np.sin(angle)
        return np.outer(rng.normal(size=2), null)
    return rng.normal(size=(2, 3))


def check_burstall_criterion(ctx: CheckContext, count: int = 1000) -> CheckResult:
    """The matrix criterion agrees with lightlike-and-decomposable on random tangents."""
    name = "burstall_criterion"
    rng = ctx.rng(1)
    regular = ctx.grid[~ctx.vertices] if np.any(~ctx.vertices) else ctx.grid
    disagreements = 0
    for k in range(count):
        gamma = osculating_circle(ctx.curve, float(rng.choice(regular))).gamma
        _, eta = lorentz_orthonormalize(subspace_basis(gamma.tri))
        kind = k % 3
        matrix = _random_tangent_matrix(rng, eta, exact=kind != 2)
        if kind == 1:
            matrix = matrix + 1e-3 * rng.normal(size=(2, 3))
        tangent = tangent_from_matrix(gamma, matrix)
        if burstall_check(gamma, tangent, 1e-9) != tangent_is_admissible(tangent, 1e-9):
            disagreements += 1
    return _result(name, float(disagreements), 0.5, f"{count} tangents")


def _vertex_free(ctx: CheckContext) -> bool:
    return not bool(np.any(ctx.vertices))


def _stencil_interval(ctx: CheckContext) -> Tuple[float, float]:
    """Curve domain, inset by a full stencil width on open sampled curves."""
    a, b = ctx.curve.domain
    if ctx.curve.kind is CurveKind.SAMPLED and not ctx.curve.closed:
        margin = STENCIL_OFFSETS.max() * ctx.curve.stencil_step()
        return a + margin, b - margin
    return a, b


def check_sphere_average(ctx: CheckContext) -> CheckResult:
    """θ-average of the ψ_θ half-measures equals c* times ρ."""
    name = "sphere_average"
    if not _vertex_free(ctx):
        return _skipped(name, "curve has vertices")
    a, b = _stencil_interval(ctx)
    try:
        result = average_half_measure(ctx.curve, a, b)
    except (VertexError, GeometryError) as e:
        return _skipped(name, e.message)
    return _result(name, result.relative_error, ctx.tolerance(1e-2), f"ratio {result.ratio:.6g}")


def check_table1(ctx: CheckContext) -> CheckResult:
    """Gram matrix of the arc-length lift derivatives."""
    name = "table1"
    regular = ctx.grid[~ctx.vertices]
    if regular.size == 0:
        return _skipped(name, "every sample is a vertex")
    worst = max(max(abs(v) for v in table1_residuals(ctx.curve, t).values()) for t in regular)
    return _result(name, worst, ctx.tolerance(1e-7), f"{regular.size} samples")


def check_table2(ctx: CheckContext, points: int = 41) -> CheckResult:
    """Gram matrix of the s̃-derivatives of the osculating-sphere curve."""
    name = "table2"
    if not _vertex_free(ctx):
        return _skipped(name, "curve has vertices")
    a, b = _stencil_interval(ctx)
    try:
        sc = sphere_curve(ctx.curve, np.linspace(a, b, points))
    except (VertexError, GeometryError) as e:
        return _skipped(name, e.message)
    worst = max(sc.table2_residuals().values())
    return _result(name, worst, ctx.tolerance(1e-5), f"{points} samples")


def _disjoint_pair(rng: np.random.Generator) -> Tuple[EuclideanSphere, EuclideanSphere]:
    c1 = rng.normal(size=3)
    r1 = rng.uniform(0.5, 2.0)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    if rng.uniform() < 0.5:
        r2 = rng.uniform(0.5, 2.0)
        c2 = c1 + direction * (r1 + r2 + rng.uniform(0.2, 2.0))
    else:
        r2 = r1 * rng.uniform(0.2, 0.7)
        c2 = c1 + direction * (r1 - r2) * rng.uniform(0.0, 0.7)
    return EuclideanSphere(c1, r1), EuclideanSphere(c2, r2)


def check_sphere_pair_cross_ratio(ctx: CheckContext, pairs: int = 100) -> CheckResult:
    """|cross| = ((e^l - 1)/(e^l + 1))² and equal separations for disjoint sphere pairs."""
    name = "sphere_pair_cross_ratio"
    rng = ctx.rng(2)
    worst = 0.0
    for k in range(pairs):
        s1, s2 = _disjoint_pair(rng)
        for attempt in range(5):
            try:
                closure = sphere_pair_closure(s1, s2, seed=ctx.seed + 7 * k + attempt)
                break
            except GeometryError:
                continue
        else:
            return CheckResult(name=name, status=CheckStatus.FAIL, detail=f"pair {k} has no usable circle")
        worst = max(worst, closure.residual, abs(closure.pair_separation.value - closure.distance))
    return _result(name, worst, 1e-6, f"{pairs} pairs")


CHECKS: Dict[str, CheckFn] = {
    "conformal_arclength_identity": check_conformal_arclength_identity,
    "moebius_invariance": check_moebius_invariance,
    "vertex_characterization": check_vertex_characterization,
    "burstall_criterion": check_burstall_criterion,
    "sphere_average": check_sphere_average,
    "table1": check_table1,
    "table2": check_table2,
    "sphere_pair_cross_ratio": check_sphere_pair_cross_ratio,
}


def run_checks(
    curve: Curve,
    samples: int = 200,
    seed: int = 42,
    corrupt_metric: bool = False,
    names: Optional[List[str]] = None,
    vertex_tol: Optional[float] = None,
) -> List[CheckResult]:
    """Run the named checks (all by default) in registry order."""
    ctx = CheckContext(curve, samples, seed, corrupt_metric, vertex_tol)
    if ctx.scale != 1.0:
        logger.info("Relaxed tolerances for sampled curve", factor=ctx.scale)
    results = []
    for name, fn in CHECKS.items():
        if names is not None and name not in names:
            continue
        try:
            result = fn(ctx)
        except ConformalError as e:
            result = CheckResult(name=name, status=CheckStatus.FAIL, detail=f"{e.error_type}: {e.message}")
        logger.info("Check finished", check=name, status=result.status.value, value=result.value)
        results.append(result)
    return results
