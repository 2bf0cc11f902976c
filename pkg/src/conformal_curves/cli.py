#!/usr/bin/env python3
"""
Command-Line Interface for conformal-curves

Usage:
  conformal-curves invariants --curve helix.json --samples 100
  conformal-curves halfmeasure --curve helix.json --format json --out hm.json
  conformal-curves angle --curve cubic.json --t 0 --h0 0.1 --levels 6
  conformal-curves sphereavg --curve helix.json --theta-count 64
  conformal-curves check --curve helix.json --seed 42
  conformal-curves export-embedding --curve helix.json
  conformal-curves schema

Data goes to stdout (or --out); diagnostics and error bodies go to stderr.
Exit codes: 0 ok, 1 check failure, 2 input error, 3 numerical error.

Author: UnityAI Team
Version: 1.0.0
"""

import csv
import io
import json
import math
import sys
import traceback
from functools import wraps
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

import click
import numpy as np
import structlog

from . import __version__
from .checks import run_checks
from .confangle import (
    angle_asymptotic_ratio,
    arclength_via_angle,
    conformal_angle,
    conformal_angle_euclidean,
    fit_order,
    infinitesimal_cross_ratio_experiment,
)
from .core.config import get_settings
from .core.exceptions import CheckFailure, ConformalError, InputError, NumericalError
from .core.logging import setup_logging
from .curve import (
    Curve,
    TorsionFormula,
    _parse_spec,
    arc_length,
    conformal_arclength,
    conformal_arclength_element,
    conformal_torsion,
    frenet,
    is_vertex,
    load_curve,
)
from .grassmann import TRI_LABELS
from .halfmeasure import convergence_order, osculating_circle_curve
from .models import Cell, CheckStatus, OutputFormat, RunConfig, TableOutput
from .osculating import osculating_circle
from .sphereavg import average_half_measure, sphere_curve

logger = structlog.get_logger(__name__)

T = TypeVar("T")

SCHEMA_FILE = "schemas/output.schema.json"


def handle_cli_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator for consistent error handling in commands."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except KeyboardInterrupt:
            body = {"success": False, "error": "Interrupted", "error_type": "KeyboardInterrupt"}
            click.echo(json.dumps(body), err=True)
            sys.exit(130)
        except ConformalError as e:
            click.echo(json.dumps(e.to_dict(), default=str), err=True)
            sys.exit(e.exit_code)
        except ValueError as e:
            click.echo(json.dumps(InputError(str(e)).to_dict()), err=True)
            sys.exit(InputError.exit_code)
        except (ArithmeticError, np.linalg.LinAlgError) as e:
            error = NumericalError(str(e), {"traceback": traceback.format_exc()})
            click.echo(json.dumps(error.to_dict()), err=True)
            sys.exit(NumericalError.exit_code)

    return wrapper


def _cell(value: Any) -> Cell:
    """Round-trip-safe cell value; non-finite floats become None."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    x = float(value)
    if not math.isfinite(x):
        return None
    return float(format(x, f".{get_settings().significant_digits}g"))


def _csv_text(value: Cell) -> str:
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{get_settings().significant_digits}g")
    return str(value)


def render(table: TableOutput, fmt: OutputFormat) -> str:
    """CSV (header, rows, then '# key,value' summary lines) or JSON text."""
    if fmt is OutputFormat.JSON:
        return json.dumps(table.model_dump(mode="json"), indent=2, allow_nan=False) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_csv_text(v) for v in row])
    for key, value in table.summary.items():
        writer.writerow([f"# {key}", _csv_text(value)])
    return buffer.getvalue()


def emit(table: TableOutput, cfg: RunConfig) -> None:
    text = render(table, cfg.format)
    if cfg.out is None:
        click.echo(text, nl=False)
    else:
        cfg.out.write_text(text, encoding="utf-8")
        logger.info("Output written", path=str(cfg.out), rows=len(table.rows))


def _table(
    cfg: RunConfig,
    columns: Sequence[str],
    rows: List[List[Any]],
    summary: Optional[Dict[str, Any]] = None,
) -> TableOutput:
    curve = _parse_spec(cfg.curve).model_dump(mode="json") if cfg.curve is not None else None
    return TableOutput(
        command=cfg.command,
        curve=curve,
        columns=list(columns),
        rows=[[_cell(v) for v in row] for row in rows],
        summary={k: _cell(v) for k, v in (summary or {}).items()},
    )


def _load(cfg: RunConfig) -> Curve:
    if cfg.curve is None:
        raise InputError("A curve specification is required (--curve PATH)")
    return load_curve(cfg.curve)


def common_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by every data command."""
    settings = get_settings()
    options = [
        click.option("--curve", "curve", type=click.Path(path_type=Path), help="Curve spec JSON file"),
        click.option(
            "--samples",
            type=click.IntRange(min=8),
            default=settings.default_samples,
            show_default=True,
            help="Number of sample points",
        ),
        click.option(
            "--tol",
            type=click.FloatRange(min=0, min_open=True),
            default=None,
            help="Vertex tolerance in element units [default: 1e-6 x max element]",
        ),
        click.option("--seed", type=int, default=settings.default_seed, show_default=True),
        click.option(
            "--format",
            "fmt",
            type=click.Choice([f.value for f in OutputFormat]),
            default=OutputFormat.CSV.value,
            show_default=True,
        ),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output file"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(command: str, **kwargs: Any) -> RunConfig:
    fmt = kwargs.pop("fmt")
    return RunConfig(command=command, format=OutputFormat(fmt), **kwargs)


@click.group(name="conformal-curves")
@click.version_option(__version__, prog_name="conformal-curves")
@click.option("--log-level", default=None, help="Override CONFORMAL_LOG_LEVEL")
@click.option("--log-format", type=click.Choice(["console", "json"]), default=None)
def cli(log_level: Optional[str], log_format: Optional[str]) -> None:
    """Conformal invariants of space curves in the light-cone model."""
    setup_logging(log_level, log_format)


INVARIANT_COLUMNS = ["t", "s", "rho", "drho_dt", "kappa", "tau", "T", "is_vertex"]
HALFMEASURE_COLUMNS = ["n", "polygonal", "quadrature", "error"]
ANGLE_COLUMNS = [
    "h",
    "theta",
    "theta_euclidean",
    "asymptotic_ratio",
    "arclength_via_angle",
    "cross_re",
    "cross_im",
    "rho_ratio",
]
CHECK_COLUMNS = ["name", "status", "value", "tolerance", "detail"]


def cmd_invariants(cfg: RunConfig) -> TableOutput:
    """Per-sample t, s, ρ, dρ/dt, κ, τ, conformal torsion and vertex flag."""
    c = _load(cfg)
    a, b = c.domain
    grid = np.linspace(a, b, cfg.samples)
    rows: List[List[Any]] = []
    s = rho = 0.0
    for i, t in enumerate(grid):
        if i > 0:
            s += arc_length(c, grid[i - 1], t)
            rho += conformal_arclength(c, grid[i - 1], t)
        data = frenet(c, t)
        vertex = is_vertex(c, t, cfg.tol)
        torsion: Optional[float] = None
        if not vertex and data.torsion_defined:
            torsion = conformal_torsion(c, t, TorsionFormula.SPHERE_SPEED)
        rows.append([t, s, rho, conformal_arclength_element(c, t), data.kappa, data.tau, torsion, vertex])
    return _table(cfg, INVARIANT_COLUMNS, rows, {"rho_total": rho, "length": s})


def cmd_halfmeasure(cfg: RunConfig, max_n: int = 4096) -> TableOutput:
    """
    Polygonal half-dimensional measure of the osculating circles on
    n = 16, 32, ..., max_n against the quadrature value, with the fitted
    order and the comparison of 12^{1/4} L^{1/2} against ρ.
    """
    c = _load(cfg)
    a, b = c.domain
    n_list = [2**k for k in range(4, 31) if 2**k <= max_n]
    study = convergence_order(osculating_circle_curve(c), a, b, n_list)
    rho = conformal_arclength(c, a, b)
    scaled = 12.0**0.25 * study.reference
    rows = [[p.n, p.polygonal, study.reference, p.error] for p in study.points]
    summary = {
        "order": study.order,
        "rho": rho,
        "scaled_half_measure": scaled,
        "relative_difference": abs(scaled - rho) / rho if rho > 0 else abs(scaled - rho),
        "last_relative_error": study.last_relative_error,
    }
    return _table(cfg, HALFMEASURE_COLUMNS, rows, summary)


def _guarded(fn: Callable[[], T]) -> Optional[T]:
    try:
        return fn()
    except ConformalError as e:
        logger.warning("Value undefined", error_type=e.error_type, error=e.message)
        return None


def cmd_angle(cfg: RunConfig, t0: float = 0.0, h0: float = 0.1, levels: int = 6) -> TableOutput:
    """Conformal angle, its asymptotics and the infinitesimal cross-ratio on an h-sweep."""
    c = _load(cfg)
    q = frenet(c, t0).q
    rows: List[List[Any]] = []
    for k in range(levels):
        h = h0 * 2.0**-k
        experiment = _guarded(lambda: infinitesimal_cross_ratio_experiment(c, t0, h))
        rows.append(
            [
                h,
                conformal_angle(c, t0, t0 + h),
                conformal_angle_euclidean(c, t0, t0 + h),
                _guarded(lambda: angle_asymptotic_ratio(c, t0, h)),
                arclength_via_angle(c, t0, h),
                None if experiment is None else experiment.cross.real,
                None if experiment is None else experiment.cross.imag,
                None if experiment is None else experiment.rho_ratio,
            ]
        )

    def order(column: int, limit: float) -> Optional[float]:
        sweep = [(row[0], row[column]) for row in rows if row[column] is not None]
        return fit_order(sweep, limit) if len(sweep) >= 2 else None

    summary = {
        "t": t0,
        "drho_ds": q**0.25,
        "asymptotic_order": order(3, 1.0),
        "arclength_order": order(4, q**0.25),
        "rho_ratio_order": order(7, 1.0),
    }
    return _table(cfg, ANGLE_COLUMNS, rows, summary)


def cmd_sphereavg(cfg: RunConfig, theta_count: Optional[int] = None) -> TableOutput:
    """Average half-dimensional measure of the ψ_θ family against c* ρ."""
    c = _load(cfg)
    a, b = c.domain
    result = average_half_measure(c, a, b, theta_count=theta_count, samples=cfg.samples)
    count = len(result.per_theta)
    thetas = [2.0 * np.pi * k / count for k in range(count)]
    sc = sphere_curve(c, np.linspace(a, b, 41))
    summary: Dict[str, Any] = {
        "average": result.average,
        "rho": result.rho,
        "ratio": result.ratio,
        "c_star": result.expected,
        "relative_error": result.relative_error,
        "table2_max": max(sc.table2_residuals().values()),
        "drill_residual": sc.drill_residual(),
        "tangent_sum_residual": sc.tangent_sum_residual(),
        "anti_isometry_residual": sc.anti_isometry_residual(c),
    }
    rows = [[theta, value] for theta, value in zip(thetas, result.per_theta)]
    return _table(cfg, ["theta", "half_measure"], rows, summary)


def cmd_check(cfg: RunConfig, corrupt_metric: bool = False) -> TableOutput:
    """Check report; ``success`` is False when any check failed."""
    c = _load(cfg)
    results = run_checks(
        c, samples=cfg.samples, seed=cfg.seed, corrupt_metric=corrupt_metric, vertex_tol=cfg.tol
    )
    rows = [[r.name, r.status.value, r.value, r.tolerance, r.detail] for r in results]
    failed = sum(r.status is CheckStatus.FAIL for r in results)
    summary = {"passed": sum(r.status is CheckStatus.PASS for r in results), "failed": failed}
    table = _table(cfg, CHECK_COLUMNS, rows, summary)
    return table.model_copy(update={"checks": results, "success": failed == 0})


def cmd_export_embedding(cfg: RunConfig) -> TableOutput:
    """Osculating circles γ(t) as ten Plücker coordinates per sample."""
    c = _load(cfg)
    a, b = c.domain
    rows = [[t, *osculating_circle(c, t).gamma.p.tolist()] for t in np.linspace(a, b, cfg.samples)]
    return _table(cfg, ["t", *TRI_LABELS], rows)


@cli.command()
@common_options
@handle_cli_errors
def invariants(**kwargs: Any) -> None:
    """Per-sample conformal invariants along the curve."""
    cfg = _config("invariants", **kwargs)
    emit(cmd_invariants(cfg), cfg)


@cli.command()
@common_options
@click.option("--max-n", type=click.IntRange(min=16), default=4096, show_default=True)
@handle_cli_errors
def halfmeasure(max_n: int, **kwargs: Any) -> None:
    """Polygonal half-dimensional measure against quadrature."""
    cfg = _config("halfmeasure", **kwargs)
    emit(cmd_halfmeasure(cfg, max_n), cfg)


@cli.command()
@common_options
@click.option("--t", "t0", type=float, default=0.0, show_default=True, help="Base parameter")
@click.option("--h0", type=click.FloatRange(min=0, min_open=True), default=0.1, show_default=True)
@click.option("--levels", type=click.IntRange(min=2), default=6, show_default=True)
@handle_cli_errors
def angle(t0: float, h0: float, levels: int, **kwargs: Any) -> None:
    """Conformal angle and cross-ratio asymptotics at one point."""
    cfg = _config("angle", **kwargs)
    emit(cmd_angle(cfg, t0, h0, levels), cfg)


@cli.command()
@common_options
@click.option("--theta-count", type=click.IntRange(min=16), default=None, help="Size of the θ-grid")
@handle_cli_errors
def sphereavg(theta_count: Optional[int], **kwargs: Any) -> None:
    """Average half-dimensional measure of the ψ_θ family."""
    cfg = _config("sphereavg", **kwargs)
    emit(cmd_sphereavg(cfg, theta_count), cfg)


@cli.command()
@common_options
@click.option("--corrupt-metric", is_flag=True, hidden=True)
@handle_cli_errors
def check(corrupt_metric: bool, **kwargs: Any) -> None:
    """Run the property checks; exit 1 when any fails."""
    cfg = _config("check", **kwargs)
    table = cmd_check(cfg, corrupt_metric)
    emit(table, cfg)
    if not table.success:
        failed = [r.name for r in table.checks or [] if r.status is CheckStatus.FAIL]
        raise CheckFailure("Property checks failed", {"failed": failed})


@cli.command("export-embedding")
@common_options
@handle_cli_errors
def export_embedding(**kwargs: Any) -> None:
    """Osculating circles in the circle space, one row per sample."""
    cfg = _config("export-embedding", **kwargs)
    emit(cmd_export_embedding(cfg), cfg)


@cli.command()
def schema() -> None:
    """Print the published JSON schema of the command output."""
    text = resources.files("conformal_curves").joinpath(SCHEMA_FILE).read_text(encoding="utf-8")
    click.echo(text, nl=False)


def main() -> None:
    """Console-script entry point."""
    cli(prog_name="conformal-curves")


if __name__ == "__main__":
    main()
