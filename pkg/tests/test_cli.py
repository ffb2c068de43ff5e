import csv
import io
import json
import subprocess
import sys

import pytest

from internodal.cli import format_number, main

CFG = ["--dim", "2", "--scenario", "s4", "--r1", "1", "--r2", "2"]


def run(*args, check_code=None):
    proc = subprocess.run([sys.executable, "-m", "internodal", *args],
                          capture_output=True, text=True)
    if check_code is not None:
        assert proc.returncode == check_code, proc.stderr
    return proc


def run_inline(code):
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)


def test_pdf_csv_layout():
    out = run("pdf", *CFG, "--points", "4097", check_code=0).stdout
    lines = out.split("\n")
    assert lines[0] == "r,pdf"
    assert lines[1] == "0,0"
    assert lines[-1] == ""
    assert len(lines) - 2 == 4097 + 2
    assert "\r" not in out


def test_csv_reserialization_is_byte_identical():
    out = run("pdf", "--dim", "3", "--scenario", "s3", "--r1", "0.7", "--r2", "1.9",
              "--points", "200", check_code=0).stdout
    rows = list(csv.reader(io.StringIO(out)))
    again = ",".join(rows[0]) + "\n" + "".join(
        ",".join(format_number(float(v)) for v in row) + "\n" for row in rows[1:])
    assert again == out


def test_pdf_oracle_source_matches_closed():
    args = ["--dim", "3", "--scenario", "s2", "--r1", "1", "--r2", "2", "--points", "512",
            "--format", "json"]
    closed = json.loads(run("pdf", *args, check_code=0).stdout)
    oracle = json.loads(run("pdf", *args, "--source", "oracle", check_code=0).stdout)
    assert closed["grid"] == oracle["grid"]
    assert max(abs(a - b) for a, b in zip(closed["values"], oracle["values"])) < 1e-8
    assert oracle["source"] == "oracle"
    assert closed["config"] == {"dim": 3, "scenario": "s2", "r1": 1.0, "r2": 2.0}


@pytest.mark.parametrize("args", [
    ["pdf", "--dim", "2", "--scenario", "s1", "--r1", "2", "--r2", "1"],
    ["pdf", *CFG, "--points", "1"],
    ["pdf", "--dim", "4", "--scenario", "s1", "--r1", "1", "--r2", "2"],
    ["pdf", "--dim", "2", "--scenario", "s1", "--r1", "-1", "--r2", "2"],
    ["moments", *CFG, "--max-order", "9"],
    ["simulate", *CFG, "-n", "100"],
    ["simulate", *CFG, "-n", "100", "--seed", "-3"],
    ["validate", "-n", "10000", "--seed", "1"],
    ["validate", *CFG, "-n", "100", "--seed", "1"],
])
def test_usage_errors_exit_2(args):
    proc = run(*args)
    assert proc.returncode == 2
    assert proc.stderr.strip()
    assert proc.stdout == ""


def test_cdf_ends_at_one():
    out = run("cdf", *CFG, "--points", "65", check_code=0).stdout
    lines = out.strip().split("\n")
    assert lines[0] == "r,cdf"
    assert lines[1] == "0,0"
    r, p = map(float, lines[-1].split(","))
    assert r == 3.0 and abs(p - 1.0) < 1e-9


def test_moments():
    m = json.loads(run("moments", *CFG, "--max-order", "2", check_code=0).stdout)
    assert list(m) == ["0", "1", "2"]
    assert abs(m["0"] - 1.0) < 1e-12
    assert abs(m["2"] - 2.5) < 1e-8


@pytest.mark.parametrize("dim, scenario, expected", [
    ("2", "s2", (2.333, 3.366)),
    ("3", "s1", (4.422, 3.898)),
])
def test_fit_beta(dim, scenario, expected):
    out = run("fit-beta", "--dim", dim, "--scenario", scenario, "--r1", "1", "--r2", "2",
              check_code=0).stdout
    fit = json.loads(out)
    assert list(fit) == ["alpha", "beta", "mean", "variance", "normalization"]
    assert abs(fit["alpha"] - expected[0]) < 0.01
    assert abs(fit["beta"] - expected[1]) < 0.01
    assert fit["normalization"] == 3.0


def test_simulate_byte_identical_and_hist(tmp_path):
    args = ["simulate", "--dim", "3", "--scenario", "s3", "--r1", "1", "--r2", "2",
            "-n", "150000", "--seed", "42", "--bins", "20"]
    a = run(*args, "--workers", "1", "--hist-out", str(tmp_path / "h.csv"), check_code=0).stdout
    b = run(*args, "--workers", "3", check_code=0).stdout
    assert a == b
    rep = json.loads(a)
    assert rep["seed"] == 42 and rep["n"] == 150000
    assert sum(rep["histogram"]["counts"]) == 150000
    assert rep["ks_statistic"] < rep["ks_threshold"]
    hist = (tmp_path / "h.csv").read_text().strip().split("\n")
    assert hist[0] == "lo,hi,count" and len(hist) == 21
    assert sum(int(line.split(",")[2]) for line in hist[1:]) == 150000


def test_validate_single_config_passes():
    proc = run("validate", *CFG, "-n", "10000", "--seed", "1", "--grid-points", "50",
               check_code=0)
    rep = json.loads(proc.stdout)
    assert rep["passed"] and rep["failed"] == []
    names = [c["name"] for c in rep["configs"][0]["checks"]]
    for required in ("normalization", "oracle_equivalence", "branch_continuity",
                     "monte_carlo_ks", "beta_reference"):
        assert required in names


def test_validate_negative_control_corrupted_coefficient():
    code = """
import sys
from internodal import closedform
real = closedform._b_uniform_uniform
def corrupted(R1, R2):
    b = real(R1, R2)
    b[2] = b[2] * 1.001
    return b
closedform._b_uniform_uniform = corrupted
from internodal.cli import main
sys.exit(main(["validate", "--dim", "3", "--scenario", "s4", "--r1", "1", "--r2", "2",
               "-n", "10000", "--seed", "1", "--grid-points", "50"]))
"""
    proc = run_inline(code)
    assert proc.returncode == 1
    rep = json.loads(proc.stdout)
    assert not rep["passed"]
    assert "3d/s4/1,2:normalization" in rep["failed"]
    assert "3d/s4/1,2:oracle_equivalence" in rep["failed"]


def test_no_convergence_exits_1(monkeypatch, capsys):
    from internodal import analysis
    from internodal.quadrature import NoConvergence

    def boom(*a, **k):
        raise NoConvergence("forced")

    monkeypatch.setattr(analysis, "mixture_pdf_oracle", boom)
    code = main(["pdf", *CFG, "--points", "3", "--source", "oracle"])
    assert code == 1
    assert "forced" in capsys.readouterr().err


def test_format_number():
    assert format_number(0.0) == "0"
    assert format_number(3.0) == "3"
    assert format_number(0.1) == "0.1"
    x = 0.12345678901234567
    assert float(format_number(x)) == x


def test_console_script_help():
    proc = subprocess.run(["internodal", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("pdf", "cdf", "moments", "fit-beta", "simulate", "validate"):
        assert sub in proc.stdout
