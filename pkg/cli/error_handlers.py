"""Map engine exceptions to process exit codes and user-facing messages."""
import logging
import sys

import logManager

from services.exceptions import (ConvergenceError, CoverError, DegenerateGeometryError, DomainError,
                                 HistogramIOError)

logger: logging.Logger = logManager.logger.get_logger(__name__)

EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2
EXIT_CONVERGENCE: int = 3

FLAG_NAMES: dict[str, str] = {
    "omega": "--omega-deg",
    "theta": "--theta-deg",
    "n": "--n",
    "samples": "--n",
    "bins": "--bins",
    "seed": "--seed",
    "threads": "--threads",
    "grid": "--grid",
    "method": "--method",
    "degrees": "--omega-deg",
    "batch_size": "monte_carlo.batch_size (config.yaml)",
    "abs_tol": "quadrature.abs_tol (config.yaml)",
    "rel_tol": "quadrature.rel_tol (config.yaml)",
    "max_subdivisions": "quadrature.max_subdivisions (config.yaml)",
    "table_nodes": "quadrature.table_nodes (config.yaml)",
}


def flag_for(argument: str | None) -> str | None:
    """
    The command-line flag matching a parameter name.

    Args:
        argument (str | None): Parameter name carried by a DomainError.

    Returns:
        str | None: The flag, the parameter name itself when unmapped, or None.
    """
    if argument is None:
        return None
    return FLAG_NAMES.get(argument, argument)


def exit_code_for(exc: BaseException) -> int:
    """
    Exit code for an exception: 2 for domain and geometry errors, 3 for
    quadrature that did not converge, 1 for any other engine error.
    """
    if isinstance(exc, (DomainError, DegenerateGeometryError)):
        return EXIT_USAGE
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    return EXIT_FAILURE


def handle_error(exc: CoverError) -> int:
    """
    Report an engine error on stderr and return its exit code.

    Args:
        exc (CoverError): The error raised by a command.

    Returns:
        int: The exit code.
    """
    message: str = str(exc)
    if isinstance(exc, DomainError):
        flag: str | None = flag_for(exc.argument)
        if flag:
            message = f"{flag}: {message}"
    elif isinstance(exc, HistogramIOError):
        message = f"--out: {message}"
    code: int = exit_code_for(exc)
    logger.error(f"{type(exc).__name__}: {message}")
    print(f"error: {message}", file=sys.stderr)
    return code
