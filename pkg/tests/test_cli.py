"""Command-line behaviour: documents, exit codes and the report format."""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from trigal.cli import EXIT_IDENTITY, EXIT_INPUT, EXIT_OK, main

GOLDEN = Path(__file__).parent / "golden" / "report_divisors_seed1.json"
REAL = {"branch_points": [[0, 0], [1, 0], [2, 0], [3, 0]]}
COMPLEX = {"branch_points": [[0, 0], [1, 0], [1, 1], [3, -1]]}


def write(tmp_path, doc, name="curve.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_periods_document(tmp_path, capsys):
    code, out, _ = run(capsys, "periods", "--config", write(tmp_path, COMPLEX))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["format"] == "trigal-periods/1"
    (curve,) = doc["curves"]
    assert curve["genus"] == 3
    assert curve["legendre_residual"] < 1e-8
    assert len(curve["tau"]) == 3


def test_duplicate_branch_points(tmp_path, capsys):
    cfg = write(tmp_path, {"branch_points": [[0, 0], [1, 0], [1, 0], [3, 0]]})
    code, _, err = run(capsys, "periods", "--config", cfg)
    assert code == EXIT_INPUT
    assert "branch points not distinct" in err


def test_missing_field(tmp_path, capsys):
    code, _, err = run(capsys, "periods", "--config", write(tmp_path, {"precision": 40}))
    assert code == EXIT_INPUT
    assert "branch_points" in err


def test_unreadable_config(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, _ = run(capsys, "periods", "--config", str(p))
    assert code == EXIT_INPUT


def test_sigma_eval_derivative(tmp_path, capsys):
    code, out, _ = run(capsys, "sigma-eval", "--config", write(tmp_path, REAL),
                       "--u", "0,0,0", "--deriv", "1")
    assert code == EXIT_OK
    re, im = json.loads(out)["value"]
    assert abs(complex(re, im) - 1) < 1e-10


def test_al_eval_routes(tmp_path, capsys):
    code, out, _ = run(capsys, "al-eval", "--config", write(tmp_path, COMPLEX), "--a", "2",
                       "--x", "0.4+0.3j,1.7-0.2j,-0.6+0.5j", "--sheets", "0,1,2")
    assert code == EXIT_OK
    assert json.loads(out)["relative_cube_difference"] < 1e-6


def test_al_eval_point_at_branch(tmp_path, capsys):
    code, out, _ = run(capsys, "al-eval", "--config", write(tmp_path, COMPLEX), "--a", "2",
                       "--x", "1,1.7-0.2j,-0.6+0.5j", "--sheets", "0,1,2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["A_a_vanishes"] is True


def test_al_eval_on_theta_divisor(tmp_path, capsys):
    code, _, err = run(capsys, "al-eval", "--config", write(tmp_path, REAL), "--a", "1",
                       "--u", "0,0,0")
    assert code == EXIT_INPUT
    assert "OnThetaDivisor" in err


def _verify(capsys, tmp_path, *extra):
    out = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", *extra, "--out", str(out))
    return code, json.loads(out.read_text()), err


def test_verify_is_deterministic(tmp_path, capsys):
    cfg = write(tmp_path, REAL)
    args = ("--config", cfg, "--suite", "periods", "--seed", "1", "--samples", "2")
    c1, d1, _ = _verify(capsys, tmp_path, *args)
    c2, d2, _ = _verify(capsys, tmp_path, *args)
    assert c1 == c2 == EXIT_OK
    assert d1 == d2


def test_exit_code_follows_report(tmp_path, capsys):
    cfg = write(tmp_path, REAL)
    code, doc, err = _verify(capsys, tmp_path, "--config", cfg, "--suite", "frobenius",
                             "--seed", "1", "--samples", "2")
    passed = all(c["passed"] for c in doc["checks"])
    assert code == (EXIT_OK if passed else EXIT_IDENTITY)
    assert doc["summary"]["failed"] == (0 if passed else 1)
    assert "frobenius" in err


def test_unknown_suite(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--config", write(tmp_path, REAL), "--suite", "nope")
    assert code == EXIT_INPUT
    assert "unknown suite" in err


def _close(a, b, path="$"):
    # residuals near rounding level differ between kernels; abs_tol absorbs them
    if isinstance(a, dict):
        assert set(a) == set(b), path
        for k in a:
            _close(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        assert len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            _close(x, y, f"{path}[{i}]")
    elif isinstance(a, float) or isinstance(b, float):
        if math.isinf(a) or math.isinf(b):
            assert a == b, path
        else:
            assert math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-9), path
    else:
        assert a == b, path


def test_golden_report(tmp_path, capsys):
    code, doc, _ = _verify(capsys, tmp_path, "--config", write(tmp_path, REAL), "--suite",
                           "divisors", "--seed", "1", "--samples", "3")
    want = json.loads(GOLDEN.read_text())
    for d in (doc, want):
        d["environment"].pop("backend")
        d["environment"].pop("version")
    _close(doc, want)
    assert code == EXIT_OK


def test_report_subcommand(tmp_path, capsys):
    code, out, _ = run(capsys, "report", str(GOLDEN))
    assert code == EXIT_OK
    assert "[PASS]" in out
    assert "3 passed, 0 failed" in out


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "trigal.cli", "periods", "--config",
                          write(tmp_path, REAL)], capture_output=True, text=True)
    assert out.returncode == EXIT_OK
    assert json.loads(out.stdout)["curves"][0]["genus"] == 3
