import subprocess
import sys

import numpy as np
import pytest

from evoseries.cli import main
from evoseries.matfile import format_coefficients

EXAMPLE_MAT = """\
1 -1 2
1 -2 1
2 1 1

2 1 3
-2 1 2
-3 2 1
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pisum_golden_line(capsys):
    code, out, err = run_cli(capsys, "pisum", "7", "2", "1")
    assert code == 0 and err == ""
    assert out == "1/48  1/48  EQUAL\n"


def test_coeffs_csv(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "7", "2", "--p", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,pi,running_sum"
    assert lines[1] == "0 0 0 1 1,1/1680,1/1680"
    assert lines[-1] == "1 1 0 0 0,1/210,1/48"
    assert len(lines) == 11


def test_coeffs_table_and_full_set(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "4", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["index", "pi", "running_sum"]
    assert len(lines) == 4  # three indices in the unrestricted (4, 2) set


def test_coeffs_rejects_bad_index(capsys):
    code, _, err = run_cli(capsys, "coeffs", "3", "5")
    assert code == 1
    assert err.startswith("error:") and err.count("\n") == 1


def test_scalar_output(capsys):
    code, out, _ = run_cli(capsys, "scalar", "--a", "1,1", "--t", "0.5", "--order", "30")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert set(lines) == {"series", "closed_form", "abs_gap"}
    assert float(lines["abs_gap"]) < 1e-12
    assert float(lines["series"]) == pytest.approx(np.exp(0.625), rel=1e-10)


def test_solve_zero_family_is_identity(capsys, tmp_path):
    path = tmp_path / "zero.mat"
    path.write_text("0 0\n0 0\n")
    code, out, _ = run_cli(capsys, "solve", "--coeffs", str(path), "--order", "5", "--t", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,r_1_1,r_1_2,r_2_1,r_2_2,tail_bound"
    assert lines[1] == "1,1,0,0,1,0"


def test_solve_stepped_csv(capsys, tmp_path):
    path = tmp_path / "example.mat"
    path.write_text(EXAMPLE_MAT)
    code, out, _ = run_cli(
        capsys,
        "solve", "--coeffs", str(path), "--order", "20", "--t", "1",
        "--step", "0.25", "--out", str(tmp_path / "run.csv"),
    )
    assert code == 0 and out == ""
    lines = (tmp_path / "run.csv").read_text().strip().splitlines()
    assert len(lines) == 6  # header + grid 0, .25, .5, .75, 1
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert [float(v) for v in first[1:10]] == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_solve_missing_file_single_error_line(capsys, tmp_path):
    code, out, err = run_cli(
        capsys, "solve", "--coeffs", str(tmp_path / "nope.mat"), "--t", "1"
    )
    assert code == 1 and out == ""
    assert err.startswith("error:") and err.count("\n") == 1


def test_solve_malformed_file_single_error_line(capsys, tmp_path):
    path = tmp_path / "bad.mat"
    path.write_text("1 2\n3 oops\n")
    code, _, err = run_cli(capsys, "solve", "--coeffs", str(path), "--t", "1")
    assert code == 1
    assert err.startswith("error:") and ":2:" in err and err.count("\n") == 1


def test_compare_pb_csv(capsys, tmp_path):
    path = tmp_path / "example.mat"
    path.write_text(EXAMPLE_MAT)
    code, out, _ = run_cli(capsys, "compare-pb", "--coeffs", str(path), "--order", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,abs_gap,rel_gap"
    assert len(lines) == 12
    for line in lines[1:]:
        degree, abs_gap, rel_gap = line.split(",")
        assert float(rel_gap) < 1e-12


def test_counterexample_table(capsys):
    code, out, _ = run_cli(capsys, "counterexample")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["t", "series_residual", "exponential_residual", "ratio"]
    assert len(lines) == 5
    last = lines[-1].split()
    assert float(last[0]) == 1.0
    # thresholds recorded from the first run: series 1.04e-8, exponential 0.359
    assert float(last[1]) < 2e-8
    assert float(last[2]) > 1e-2
    assert float(last[3]) > 1e3


def test_algebra_reduce_lines(capsys):
    code, out, _ = run_cli(capsys, "algebra", "reduce", "US")
    assert code == 0
    assert out == "1/1 * S^0 U^0\n-1/1 * S^1 U^0\n"


def test_algebra_group_lines(capsys):
    code, out, _ = run_cli(capsys, "algebra", "group", "2", "2")
    assert code == 0
    assert out.splitlines() == [
        "-3/1 * S^0 U^1",
        "3/1 * S^0 U^2",
        "6/1 * S^1 U^1",
        "-5/1 * S^1 U^2",
        "3/1 * S^1 U^3",
        "-3/1 * S^2 U^1",
        "2/1 * S^2 U^2",
        "-1/1 * S^2 U^3",
    ]


def test_algebra_power_lines(capsys):
    code, out, _ = run_cli(capsys, "algebra", "power", "1", "--lam", "2", "--mu", "1/3")
    assert code == 0
    assert out == "2/1 * S^0 U^1\n-1/3 * S^1 U^1\n"


def test_algebra_guard_single_error_line(capsys):
    code, _, err = run_cli(capsys, "algebra", "power", "13")
    assert code == 1
    assert err.startswith("error:") and "guard" in err and err.count("\n") == 1


def test_bdp_csv(capsys, tmp_path):
    out_path = tmp_path / "traj.csv"
    code, out, _ = run_cli(
        capsys,
        "bdp", "--lam0", "1", "--mu0", "1", "--lam1", "0.5", "--mu1", "0.5",
        "--states", "30", "--T", "0.5", "--steps", "5", "--order", "20",
        "--out", str(out_path),
    )
    assert code == 0 and out == ""
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "t," + ",".join(f"p_{i}" for i in range(1, 31)) + ",leakage"
    assert len(lines) == 7
    final = [float(v) for v in lines[-1].split(",")]
    assert final[0] == 0.5
    assert abs(sum(final[1:-1]) - 1.0) < 1e-9
    assert final[-1] < 1e-9


def test_bdp_rejects_bad_rate(capsys):
    code, _, err = run_cli(capsys, "bdp", "--lam0", "0")
    assert code == 1
    assert err.startswith("error:") and err.count("\n") == 1


def test_usage_error_is_single_line(capsys):
    code, _, err = run_cli(capsys, "nonsense")
    assert code == 2
    assert err.startswith("error:") and err.count("\n") == 1


def test_missing_positionals_single_error_line(capsys):
    code, _, err = run_cli(capsys, "coeffs")
    assert code == 2
    assert err.startswith("error:") and err.count("\n") == 1


def test_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "algebra", "power", "4", "--lam", "3", "--mu", "2")
    _, second, _ = run_cli(capsys, "algebra", "power", "4", "--lam", "3", "--mu", "2")
    assert first == second


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "evoseries", "pisum", "7", "2", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1/48  1/48  EQUAL\n"
