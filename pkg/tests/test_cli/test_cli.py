#!/usr/bin/env python3
"""Tests for cli module."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from conformal_curves import __version__
from conformal_curves import cli as cli_module
from conformal_curves.cli import cli
from conformal_curves.core.logging import setup_logging
from conformal_curves.grassmann import TriVector, tri_square
from conformal_curves.models import TableOutput

HELIX = {"kind": "helix", "a": 1.0, "b": 1.0}
CIRCLE = {"kind": "circle", "r": 1.0}


@pytest.fixture
def runner():
    """Click runner; logging is reset after each invocation."""
    yield CliRunner()
    setup_logging("WARNING")


def _run(runner, args, out=None):
    full = ["--log-level", "WARNING", *args]
    if out is not None:
        full += ["--out", str(out)]
    return runner.invoke(cli, full)


def _json(runner, temp_dir, args):
    out = temp_dir / "out.json"
    result = _run(runner, [*args, "--format", "json"], out)
    assert result.exit_code == 0, result.output
    return json.loads(out.read_text(encoding="utf-8"))


class TestInvariants:
    """Test the invariants command."""

    def test_helix(self, runner, temp_dir, write_spec):
        """Test the accumulated ρ on a helix."""
        body = _json(runner, temp_dir, ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "100"])

        assert body["command"] == "invariants"
        assert body["curve"]["kind"] == "helix"
        assert len(body["rows"]) == 100
        assert body["rows"][-1][2] == pytest.approx(np.pi * np.sqrt(2.0), rel=1e-8)
        assert body["summary"]["rho_total"] == pytest.approx(np.pi * np.sqrt(2.0), rel=1e-8)

    def test_circle(self, runner, temp_dir, write_spec):
        """Test a circle has zero ρ, only vertices and no torsion."""
        body = _json(runner, temp_dir, ["invariants", "--curve", str(write_spec(CIRCLE)), "--samples", "9"])
        t_column = body["columns"].index("T")

        assert body["summary"]["rho_total"] == 0.0
        assert all(row[-1] is True for row in body["rows"])
        assert all(row[t_column] is None for row in body["rows"])

    def test_vertex_tolerance_option(self, runner, temp_dir, write_spec):
        """Test --tol sets the vertex tolerance in element units."""
        args = ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "9"]
        loose = _json(runner, temp_dir, [*args, "--tol", "0.6"])
        tight = _json(runner, temp_dir, [*args, "--tol", "0.4"])
        t_column = loose["columns"].index("T")

        assert all(row[-1] is True for row in loose["rows"])
        assert all(row[t_column] is None for row in loose["rows"])
        assert all(row[-1] is False for row in tight["rows"])

    def test_tol_reaches_vertex_test(self, runner, temp_dir, write_spec, mocker):
        """Test the --tol value is passed to every vertex test."""
        spy = mocker.spy(cli_module, "is_vertex")
        _run(runner, ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "8", "--tol", "0.25"])

        assert spy.call_count == 8
        assert all(call.args[2] == 0.25 for call in spy.call_args_list)

    def test_csv(self, runner, temp_dir, write_spec):
        """Test the CSV header and summary lines."""
        out = temp_dir / "out.csv"
        result = _run(runner, ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "10"], out)
        lines = out.read_text(encoding="utf-8").splitlines()

        assert result.exit_code == 0
        assert lines[0] == "t,s,rho,drho_dt,kappa,tau,T,is_vertex"
        assert len(lines) == 1 + 10 + 2
        assert lines[-2].startswith("# rho_total,")
        assert lines[1].endswith(",false")

    def test_deterministic(self, runner, temp_dir, write_spec):
        """Test repeated runs give identical output."""
        args = ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "12"]
        first = _run(runner, args, temp_dir / "a.csv")
        second = _run(runner, args, temp_dir / "b.csv")

        assert first.exit_code == second.exit_code == 0
        assert (temp_dir / "a.csv").read_bytes() == (temp_dir / "b.csv").read_bytes()


class TestInputErrors:
    """Test exit code 2 for bad input."""

    def test_bad_json(self, runner, write_spec):
        """Test a malformed spec file."""
        result = _run(runner, ["invariants", "--curve", str(write_spec("{not json"))])

        assert result.exit_code == 2

    def test_missing_curve(self, runner):
        """Test --curve is required by data commands."""
        assert _run(runner, ["invariants"]).exit_code == 2

    def test_too_few_samples(self, runner, write_spec):
        """Test --samples below 8 is a usage error."""
        result = _run(runner, ["invariants", "--curve", str(write_spec(HELIX)), "--samples", "4"])

        assert result.exit_code == 2


class TestCommands:
    """Test the remaining commands."""

    def test_halfmeasure(self, runner, temp_dir, write_spec):
        """Test the convergence table and fitted order."""
        body = _json(runner, temp_dir, ["halfmeasure", "--curve", str(write_spec(HELIX)), "--max-n", "256"])

        assert [row[0] for row in body["rows"]] == [16, 32, 64, 128, 256]
        assert body["summary"]["order"] >= 0.9
        assert body["summary"]["relative_difference"] < 1e-6

    def test_export_embedding(self, runner, temp_dir, write_spec):
        """Test the exported circles are unit trivectors."""
        args = ["export-embedding", "--curve", str(write_spec(HELIX)), "--samples", "8"]
        body = _json(runner, temp_dir, args)

        assert len(body["columns"]) == 11
        for row in body["rows"]:
            assert tri_square(TriVector(np.array(row[1:]))) == pytest.approx(1.0, rel=1e-9)

    def test_angle(self, runner, temp_dir, write_spec):
        """Test the angle sweep runs on the twisted cubic."""
        spec = write_spec({"kind": "twisted_cubic"})
        body = _json(runner, temp_dir, ["angle", "--curve", str(spec), "--levels", "4"])

        assert len(body["rows"]) == 4
        assert body["summary"]["drho_ds"] == pytest.approx(6.0**0.5)

    def test_sphereavg(self, runner, temp_dir, write_spec):
        """Test the sphere average on a short helix."""
        spec = write_spec({**HELIX, "domain": [0.0, 1.0]})
        body = _json(runner, temp_dir, ["sphereavg", "--curve", str(spec), "--samples", "100"])

        assert len(body["rows"]) == 64
        assert body["summary"]["relative_error"] < 1e-2

    def test_schema(self, runner):
        """Test the published schema describes the output document."""
        result = runner.invoke(cli, ["schema"])
        schema = json.loads(result.output)

        assert result.exit_code == 0
        assert set(schema["properties"]) == set(TableOutput.model_fields)

    def test_version(self, runner):
        """Test --version."""
        result = runner.invoke(cli, ["--version"])

        assert result.exit_code == 0
        assert __version__ in result.output


@pytest.mark.slow
class TestCheckCommand:
    """Test the check command exit codes."""

    def test_circle_passes(self, runner, temp_dir, write_spec):
        """Test a circle has no failing checks."""
        args = ["check", "--curve", str(write_spec(CIRCLE)), "--samples", "16"]
        result = _run(runner, args, temp_dir / "c.csv")

        assert result.exit_code == 0

    def test_corrupt_metric(self, runner, temp_dir, write_spec):
        """Test the corrupted metric makes the run fail."""
        args = ["check", "--curve", str(write_spec(HELIX)), "--samples", "16", "--corrupt-metric"]
        args += ["--format", "json"]
        out = temp_dir / "c.json"
        result = _run(runner, args, out)
        body = json.loads(out.read_text(encoding="utf-8"))

        assert result.exit_code == 1
        assert body["success"] is False
        assert body["summary"]["failed"] >= 1

    def test_vertex_tolerance_option(self, runner, temp_dir, write_spec):
        """Test --tol reaches the checks: every helix sample becomes a vertex."""
        args = ["check", "--curve", str(write_spec({**HELIX, "domain": [0.0, 1.0]})), "--samples", "16"]
        out = temp_dir / "c.json"
        _run(runner, [*args, "--tol", "0.6", "--format", "json"], out)
        body = json.loads(out.read_text(encoding="utf-8"))
        status = {check["name"]: check["status"] for check in body["checks"]}

        assert status["table1"] == "skipped"
        assert status["table2"] == "skipped"
