"""
End-to-end runs of cap_cover.py in a subprocess, with golden output lines.
"""
import csv
import os
import subprocess
import sys

import pytest
import yaml


def _run(repo_root, tmp_path, *args, env=None):
    environment = {k: v for k, v in os.environ.items()
                   if k not in ("DEBUG", "CAP_COVER_SEED", "CAP_COVER_THREADS")}
    environment["CAP_COVER_CONFIG_PATH"] = str(tmp_path / "config")
    environment["PYTHONIOENCODING"] = "utf-8"
    environment["COLUMNS"] = "200"
    environment.update(env or {})
    return subprocess.run([sys.executable, "cap_cover.py", *args], cwd=repo_root, env=environment,
                          capture_output=True, text=True, encoding="utf-8")


def _line(result, prefix):
    """The first stdout line starting with prefix."""
    matches = [line for line in result.stdout.splitlines() if line.startswith(prefix)]
    assert matches, f"no line starting with {prefix!r} in:\n{result.stdout}"
    return matches[0]


def _degrees(line):
    return float(line.rsplit(" ", 1)[1].rstrip("°"))


def test_help_names_the_default_seed(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "--help")
    assert result.returncode == 0
    assert "0x5EEDCA95 = 1592642197" in result.stdout
    for subcommand in ("exact", "bounds", "kappa", "pe", "gdist", "coverage", "simulate", "hist", "check"):
        assert subcommand in result.stdout


def test_exact_open_interval(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "exact", "--omega-deg", "80")
    assert result.returncode == 0
    assert _line(result, "p(") == "p(80°) = OPEN (omega0 < omega < 90°; no closed form known)"


def test_stdout_carries_only_results(repo_root, tmp_path):
    exact = _run(repo_root, tmp_path, "exact", "--omega-deg", "80", env={"DEBUG": "true"})
    assert exact.stdout.splitlines() == ["p(80°) = OPEN (omega0 < omega < 90°; no closed form known)"]
    bounds = _run(repo_root, tmp_path, "bounds", "--omega-deg", "88")
    assert bounds.stdout.splitlines() == ["omega=88° q=0.0765 q_lcv=0.0766 gilbert=0.8567 p=OPEN"]
    kappa = _run(repo_root, tmp_path, "kappa", "--method", "closed", env={"DEBUG": "true"})
    lines = kappa.stdout.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("kappa (closed) = ") and lines[1].startswith("E(N) = 32 kappa = ")


def test_exact_closed_form(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "exact", "--omega-deg", "120")
    assert _line(result, "p(") == "p(120°) = 0.8203"
    full = _run(repo_root, tmp_path, "exact", "--omega-deg", "90", "--full")
    assert float(_line(full, "p(90°) = ").split(" = ")[1]) == pytest.approx(0.125, abs=1e-15)


def test_exact_out_of_range_names_the_flag(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "exact", "--omega-deg", "200")
    assert result.returncode == 2
    assert "--omega-deg" in result.stderr


def test_bounds_at_88_degrees(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "bounds", "--omega-deg", "88")
    assert result.returncode == 0
    assert _line(result, "omega=") == "omega=88° q=0.0765 q_lcv=0.0766 gilbert=0.8567 p=OPEN"


def test_bounds_thresholds(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "bounds")
    assert result.returncode == 0
    assert _degrees(_line(result, "q > 0 above ")) == pytest.approx(84.25, abs=0.05)
    assert _degrees(_line(result, "q_lcv > 0 above ")) == pytest.approx(83.90, abs=0.05)
    assert _line(result, "omega0 = ").startswith("omega0 = 70.52")


def test_kappa_closed(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "kappa", "--method", "closed")
    assert result.returncode == 0
    assert _line(result, "kappa (closed) = ").startswith("kappa (closed) = 0.1019181")
    assert _line(result, "E(N) = ").startswith("E(N) = 32 kappa = 3.2613819")


def test_pe_rejects_theta_below_right_angle(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "pe", "--theta-deg", "80")
    assert result.returncode == 2
    assert "--theta-deg" in result.stderr


def test_coverage_is_reproducible(repo_root, tmp_path):
    first = _run(repo_root, tmp_path, "coverage", "--omega-deg", "120", "--n", "4000")
    second = _run(repo_root, tmp_path, "coverage", "--omega-deg", "120", "--n", "4000", "--threads", "2")
    assert first.returncode == 0
    assert _line(first, "p_hat(120°) = ") == _line(second, "p_hat(120°) = ")


def test_seed_from_environment(repo_root, tmp_path):
    flagged = _run(repo_root, tmp_path, "--seed", "7", "coverage", "--omega-deg", "100", "--n", "2000")
    from_env = _run(repo_root, tmp_path, "coverage", "--omega-deg", "100", "--n", "2000",
                    env={"CAP_COVER_SEED": "7"})
    assert _line(flagged, "p_hat(") == _line(from_env, "p_hat(")


def test_simulate_tetra(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "simulate", "tetra", "--n", "20000")
    assert result.returncode == 0
    assert _line(result, "kappa_hat = ")
    assert _line(result, "implication violations = ") == "implication violations = 0"


def test_hist_writes_csv(repo_root, tmp_path):
    out = tmp_path / "theta_min.csv"
    result = _run(repo_root, tmp_path, "hist", "theta-min", "--n", "5000", "--bins", "20", "--out", str(out))
    assert result.returncode == 0
    with open(out, encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["bin_left", "bin_right", "count", "density", "overlay"]
    assert len(rows) == 21
    assert sum(int(row[2]) for row in rows[1:]) == 5000
    assert b"\r\n" not in out.read_bytes()


def test_hist_into_a_missing_directory(repo_root, tmp_path):
    out = tmp_path / "missing" / "h.csv"
    result = _run(repo_root, tmp_path, "hist", "theta-min", "--n", "500", "--bins", "10", "--out", str(out))
    assert result.returncode == 1
    assert "--out" in result.stderr


def test_hist_rejects_one_bin(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "hist", "theta-min", "--n", "100", "--bins", "1")
    assert result.returncode == 2
    assert "--bins" in result.stderr


def test_config_save_and_show(repo_root, tmp_path):
    saved = _run(repo_root, tmp_path, "config", "save")
    assert saved.returncode == 0
    assert (tmp_path / "config" / "config.yaml").exists()
    shown = _run(repo_root, tmp_path, "config", "show")
    assert _line(shown, "monte_carlo:") == "monte_carlo:"
    assert "  seed: 1592642197" in shown.stdout.splitlines()


@pytest.mark.slow
def test_check_delta_norm(repo_root, tmp_path):
    result = _run(repo_root, tmp_path, "check", "delta-norm", "--theta-deg", "120")
    assert result.returncode == 0


def test_hist_csv_is_identical_across_thread_counts(repo_root, tmp_path):
    config_dir = tmp_path / "config"
    config_dir.mkdir()
    (config_dir / "config.yaml").write_text(yaml.safe_dump({"monte_carlo": {"batch_size": 1000}}), encoding="utf-8")
    single = tmp_path / "single.csv"
    pooled = tmp_path / "pooled.csv"
    for threads, out in (("1", single), ("4", pooled)):
        result = _run(repo_root, tmp_path, "hist", "theta-min", "--n", "6000", "--bins", "30",
                      "--threads", threads, "--out", str(out))
        assert result.returncode == 0
    assert single.read_bytes() == pooled.read_bytes()
