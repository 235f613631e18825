"""
This module provides functions to handle command-line arguments and environment variables.
"""
import argparse
import logging
from os import getenv
from typing import Optional, Sequence, Union

import logManager

from services.exceptions import DomainError
from services.quad_engine import KAPPA_METHODS
from services.sampling import DEFAULT_SEED

logger: logging.Logger = logManager.logger.get_logger(__name__)

HIST_KINDS: tuple[str, ...] = ("theta-abc", "theta-min")
SIMULATE_KINDS: tuple[str, ...] = ("tetra",)
CHECK_KINDS: tuple[str, ...] = ("duality", "dominance", "delta-norm", "envelope")
CONFIG_ACTIONS: tuple[str, ...] = ("show", "save", "reset")
PE_CHARTS: tuple[str, ...] = ("angle", "side")


def get_environment_variable(var: str, boolean: bool = False) -> Union[str, bool, None]:
    """
    Retrieve the value of an environment variable.

    Args:
        var (str): The name of the environment variable.
        boolean (bool): If True, interpret the value as a boolean.

    Returns:
        str or bool or None: The value of the environment variable, or None if not found.
    """
    value: Optional[str] = getenv(var)
    if value is None:
        return None
    if boolean:
        return value.lower() == "true"
    return value


def get_integer_variable(var: str, argument: str) -> Optional[int]:
    """
    Retrieve an integer environment variable.

    Args:
        var (str): The name of the environment variable.
        argument (str): Parameter name reported when the value is not an integer.

    Returns:
        Optional[int]: The value, or None if not set. Hex values with a 0x prefix are accepted.
    """
    value = get_environment_variable(var)
    if not isinstance(value, str) or not value.strip():
        return None
    try:
        return int(value.strip(), 0)
    except ValueError as e:
        raise DomainError(f"{var}={value!r} is not an integer", argument) from e


def _integer(text: str) -> int:
    """argparse type accepting decimal or 0x-prefixed integers."""
    try:
        return int(text, 0)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid integer value: {text!r}") from e


def _common_parser() -> argparse.ArgumentParser:
    """
    Flags accepted before and after the subcommand. Defaults are suppressed so
    that a flag given on either side survives parsing.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", default=argparse.SUPPRESS,
                        help="Enables debug output (env DEBUG=true)")
    common.add_argument("--config-path", type=str, default=argparse.SUPPRESS,
                        help="Configuration directory (env CAP_COVER_CONFIG_PATH, default ~/.cap_cover)")
    common.add_argument("--seed", type=_integer, default=argparse.SUPPRESS,
                        help=f"Experiment seed (env CAP_COVER_SEED, default 0x{DEFAULT_SEED:X} = {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="Worker threads; results do not depend on it (env CAP_COVER_THREADS, default 1)")
    common.add_argument("--full", action="store_true", default=argparse.SUPPRESS,
                        help="Print reals with 17 significant digits instead of 4 decimals")
    return common


def build_parser() -> argparse.ArgumentParser:
    """
    Build the parser with every subcommand.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    common: argparse.ArgumentParser = _common_parser()
    ap = argparse.ArgumentParser(
        prog="cap_cover.py", parents=[common],
        description="Coverage of the sphere by four random caps: exact values, bounds, quadrature and simulation",
        epilog=f"Angles are given in degrees. The default seed 0x{DEFAULT_SEED:X} makes every run reproducible.")
    sub = ap.add_subparsers(dest="subcommand", required=True, metavar="subcommand")

    exact = sub.add_parser("exact", parents=[common], help="Exact coverage probability p(omega) or OPEN")
    exact.add_argument("--omega-deg", type=float, required=True, help="Cap radius in degrees")

    bounds = sub.add_parser("bounds", parents=[common], help="Lower bounds q, q_lcv and Gilbert's upper bound")
    bounds.add_argument("--omega-deg", type=float, help="Cap radius in degrees")
    bounds.add_argument("--thresholds", action="store_true",
                        help="Also print the radii above which q and q_lcv are positive")

    kappa = sub.add_parser("kappa", parents=[common], help="kappa = P{well-centered and acute base}")
    kappa.add_argument("--method", choices=KAPPA_METHODS + ("mc",), default="quad", help="Evaluation method")
    kappa.add_argument("--n", type=int, default=1_000_000, help="Sample size for --method mc")

    pe = sub.add_parser("pe", parents=[common], help="P{E | theta} by quadrature")
    pe.add_argument("--theta-deg", type=float, required=True, help="Circumcap radius in degrees, in (90, 180]")
    pe.add_argument("--chart", choices=PE_CHARTS, default="angle", help="Integration chart")
    pe.add_argument("--mc", type=int, metavar="N", help="Also estimate by simulating N triangles")

    gdist = sub.add_parser("gdist", parents=[common], help="Density g and distribution G of theta_abc given E")
    gdist.add_argument("--grid", type=int, default=91, help="Number of grid points over [90, 180] degrees")
    gdist.add_argument("--out", type=str, help="CSV file for theta,g,G")

    coverage = sub.add_parser("coverage", parents=[common], help="Monte Carlo coverage probability")
    coverage.add_argument("--omega-deg", type=float, required=True, help="Cap radius in degrees")
    coverage.add_argument("--n", type=int, default=1_000_000, help="Number of random configurations")

    simulate = sub.add_parser("simulate", parents=[common], help="Random tetrahedron experiments")
    simulate.add_argument("kind", choices=SIMULATE_KINDS)
    simulate.add_argument("--n", type=int, default=1_000_000, help="Number of random quads")

    hist = sub.add_parser("hist", parents=[common], help="Histogram of theta_abc or theta_min with overlay")
    hist.add_argument("kind", choices=HIST_KINDS)
    hist.add_argument("--n", type=int, default=1_000_000, help="Number of samples")
    hist.add_argument("--bins", type=int, help="Number of bins (config histogram.bins, default 100)")
    hist.add_argument("--out", type=str, help="CSV output file")

    check = sub.add_parser("check", parents=[common], help="Cross-checks")
    check.add_argument("kind", choices=CHECK_KINDS)
    check.add_argument("--n", type=int, help="Sample size (duality default 100000, dominance default 1000000)")
    check.add_argument("--omega-deg", type=float, action="append",
                       help="Cap radius for the duality check, repeatable")
    check.add_argument("--theta-deg", type=float, action="append",
                       help="Circumcap radius for the delta-norm check, repeatable")

    config = sub.add_parser("config", parents=[common], help="Show, save or reset the YAML configuration")
    config.add_argument("action", choices=CONFIG_ACTIONS)
    return ap


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments and apply the environment fallbacks.

    Args:
        argv (Optional[Sequence[str]]): Arguments without the program name; sys.argv when None.

    Returns:
        argparse.Namespace: Parsed arguments; debug, config_path, seed and threads
            are always present (None when neither flag nor environment sets them).
    """
    args: argparse.Namespace = build_parser().parse_args(argv)

    debug_enable: bool = bool(getattr(args, "debug", False))
    if not debug_enable:
        debug_env = get_environment_variable("DEBUG", True)
        if isinstance(debug_env, bool):
            debug_enable = debug_env
    args.debug = debug_enable

    config_path: Optional[str] = getattr(args, "config_path", None)
    if not config_path:
        config_env = get_environment_variable("CAP_COVER_CONFIG_PATH")
        if isinstance(config_env, str) and config_env:
            config_path = config_env
    args.config_path = config_path

    seed: Optional[int] = getattr(args, "seed", None)
    args.seed = seed if seed is not None else get_integer_variable("CAP_COVER_SEED", "seed")

    threads: Optional[int] = getattr(args, "threads", None)
    args.threads = threads if threads is not None else get_integer_variable("CAP_COVER_THREADS", "threads")

    args.full = bool(getattr(args, "full", False))
    return args
