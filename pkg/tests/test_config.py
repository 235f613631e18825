"""
Tests for the YAML configuration, argument parsing, the runtime invocation
and the error-to-exit-code mapping.
"""
import math

import pytest
import yaml

from cli import error_handlers
from config_manager import argument_handler, load
from config_manager.config_handler import CONFIG_FILE, DEFAULTS, Config
from config_manager.runtime_config_handler import CliInvocation
from services.exceptions import ConvergenceError, DomainError, HistogramIOError
from services.sampling import DEFAULT_SEED
from services.utils import format_degrees, render
from sphere_objects.estimate_object import OPEN

ENV_VARS = ("DEBUG", "CAP_COVER_SEED", "CAP_COVER_THREADS", "CAP_COVER_CONFIG_PATH")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for var in ENV_VARS:
        monkeypatch.delenv(var, raising=False)


def _write_config(directory, contents):
    (directory / CONFIG_FILE).write_text(yaml.safe_dump(contents), encoding="utf-8")


def test_defaults_without_a_file(tmp_path):
    config = Config(str(tmp_path))
    config.load_config()
    assert config.yaml_config == DEFAULTS
    assert config.section("monte_carlo")["seed"] == DEFAULT_SEED
    assert not (tmp_path / CONFIG_FILE).exists()


def test_partial_file_is_completed(tmp_path):
    _write_config(tmp_path, {"monte_carlo": {"seed": 42}, "histogram": None})
    config = Config(str(tmp_path))
    config.load_config()
    assert config.section("monte_carlo")["seed"] == 42
    assert config.section("monte_carlo")["batch_size"] == 65536
    assert config.section("histogram")["bins"] == 100


def test_malformed_file_stops_the_program(tmp_path):
    (tmp_path / CONFIG_FILE).write_text("quadrature: [unclosed\n", encoding="utf-8")
    config = Config(str(tmp_path))
    with pytest.raises(SystemExit):
        config.load_config()


def test_debug_flag_overrides_the_log_level(tmp_path):
    config = Config(str(tmp_path), debug=True)
    config.load_config()
    assert config.section("system")["loglevel"] == "DEBUG"


def test_save_and_reset(tmp_path):
    config = Config(str(tmp_path))
    config.load_config()
    config.yaml_config["histogram"]["bins"] = 25
    path = config.save_config()
    assert yaml.safe_load(open(path, encoding="utf-8"))["histogram"]["bins"] == 25
    config.reset_config()
    assert config.section("histogram")["bins"] == 100
    assert (tmp_path / "backup" / CONFIG_FILE).exists()
    assert not (tmp_path / CONFIG_FILE).exists()


def test_quadrature_spec_from_config(tmp_path):
    _write_config(tmp_path, {"quadrature": {"abs_tol": 1e-7, "table_nodes": 20}})
    config = Config(str(tmp_path))
    config.load_config()
    spec = config.quadrature_spec()
    assert spec.abs_tol == 1e-7
    assert spec.rel_tol == 1e-9
    assert spec.table_nodes == 20


def test_invalid_quadrature_config_is_a_domain_error(tmp_path):
    _write_config(tmp_path, {"quadrature": {"abs_tol": -1.0}})
    config = Config(str(tmp_path))
    config.load_config()
    with pytest.raises(DomainError) as caught:
        config.quadrature_spec()
    assert error_handlers.flag_for(caught.value.argument) == "quadrature.abs_tol (config.yaml)"


@pytest.mark.parametrize("argv", [
    ["--seed", "16", "exact", "--omega-deg", "80"],
    ["exact", "--omega-deg", "80", "--seed", "0x10"],
])
def test_common_flags_before_or_after_the_subcommand(argv):
    args = argument_handler.parse_arguments(argv)
    assert args.subcommand == "exact"
    assert args.seed == 16
    assert args.omega_deg == 80.0
    assert args.threads is None
    assert args.debug is False


def test_environment_fallbacks(monkeypatch):
    monkeypatch.setenv("CAP_COVER_SEED", "0x5")
    monkeypatch.setenv("CAP_COVER_THREADS", "3")
    monkeypatch.setenv("DEBUG", "true")
    monkeypatch.setenv("CAP_COVER_CONFIG_PATH", "/tmp/somewhere")
    args = argument_handler.parse_arguments(["kappa", "--method", "closed"])
    assert (args.seed, args.threads, args.debug, args.config_path) == (5, 3, True, "/tmp/somewhere")
    flagged = argument_handler.parse_arguments(["kappa", "--seed", "9"])
    assert flagged.seed == 9


def test_bad_integer_environment_value(monkeypatch):
    monkeypatch.setenv("CAP_COVER_SEED", "seed")
    with pytest.raises(DomainError) as caught:
        argument_handler.parse_arguments(["kappa"])
    assert caught.value.argument == "seed"


def test_missing_required_flag_exits_with_usage():
    with pytest.raises(SystemExit) as caught:
        argument_handler.parse_arguments(["exact"])
    assert caught.value.code == 2


def test_load_merges_yaml_and_flags(tmp_path):
    _write_config(tmp_path, {"monte_carlo": {"seed": 99, "threads": 2}, "histogram": {"bins": 40}})
    invocation, config = load(["--config-path", str(tmp_path), "hist", "theta-min", "--n", "500"])
    assert invocation.seed == 99
    assert invocation.threads == 2
    assert invocation.bins == 40
    assert invocation.kind == "theta-min"
    assert invocation.n == 500
    flagged, _ = load(["--config-path", str(tmp_path), "hist", "theta-min", "--bins", "7", "--seed", "1"])
    assert (flagged.bins, flagged.seed) == (7, 1)
    assert config.configDir == str(tmp_path)


def test_repeated_angle_flags_collect_into_lists(tmp_path):
    invocation, _ = load(["--config-path", str(tmp_path), "check", "duality",
                          "--omega-deg", "84", "--omega-deg", "120"])
    assert invocation.omega_degs == [84.0, 120.0]
    assert invocation.omega_deg is None


def test_invocation_validation():
    with pytest.raises(DomainError):
        CliInvocation("kappa", seed=-1)
    with pytest.raises(DomainError):
        CliInvocation("kappa", threads=0)
    with pytest.raises(DomainError):
        CliInvocation("coverage", n=0)


@pytest.mark.parametrize("degrees, expected", [(88.0, "88°"), (84.25, "84.25°"), (90.0, "90°")])
def test_format_degrees(degrees, expected):
    assert format_degrees(math.radians(degrees)) == expected


def test_render():
    assert render(0.076512) == "0.0765"
    assert render(None) == "n/a"
    assert render(OPEN, full=True) == "OPEN"
    assert render(0.1, full=True) == "0.10000000000000001"


@pytest.mark.parametrize("exc, code, fragment", [
    (DomainError("omega=4 outside [0, pi]", "omega"), 2, "--omega-deg: "),
    (ConvergenceError("kappa did not converge", 0.1, 1e-3), 3, "best estimate"),
    (HistogramIOError("Cannot write CSV", "/nowhere/out.csv"), 1, "--out: "),
])
def test_handle_error(capsys, exc, code, fragment):
    assert error_handlers.handle_error(exc) == code
    assert fragment in capsys.readouterr().err
