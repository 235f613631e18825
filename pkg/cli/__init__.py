"""
Command-line surface: one handler class per command family, registered in a dispatch table.
"""
import logging
import time
from typing import Callable

import logManager

from config_manager.config_handler import Config
from config_manager.runtime_config_handler import CliInvocation
from services.exceptions import CoverError
from .check_commands import CheckCommands
from .config_commands import ConfigCommands
from .coverage_commands import CoverageCommands
from .error_handlers import handle_error
from .quadrature_commands import QuadratureCommands
from .simulation_commands import SimulationCommands

logger: logging.Logger = logManager.logger.get_logger(__name__)

Handler = Callable[[CliInvocation], int]


def create_cli(engine_config: Config) -> dict[str, Handler]:
    """
    Build the dispatch table.

    Args:
        engine_config (Config): Loaded configuration, used by the config handler.

    Returns:
        dict[str, Handler]: Handler per subcommand.
    """
    coverage_commands: CoverageCommands = CoverageCommands()
    quadrature_commands: QuadratureCommands = QuadratureCommands()
    simulation_commands: SimulationCommands = SimulationCommands()
    check_commands: CheckCommands = CheckCommands()
    config_commands: ConfigCommands = ConfigCommands(engine_config)
    return {
        "exact":    coverage_commands.exact,
        "bounds":   coverage_commands.bounds,
        "coverage": coverage_commands.coverage,
        "kappa":    quadrature_commands.kappa,
        "pe":       quadrature_commands.pe,
        "gdist":    quadrature_commands.gdist,
        "simulate": simulation_commands.simulate,
        "hist":     simulation_commands.hist,
        "check":    check_commands.check,
        "config":   config_commands.config,
    }


def dispatch(invocation: CliInvocation, engine_config: Config) -> int:
    """
    Run one invocation.

    Args:
        invocation (CliInvocation): The parsed command line.
        engine_config (Config): Loaded configuration.

    Returns:
        int: 0 on success, 2 for domain errors, 3 for quadrature that did not converge, 1 otherwise.
    """
    handlers: dict[str, Handler] = create_cli(engine_config)
    start: float = time.perf_counter()
    logger.debug(f"Dispatching {invocation.get_all_data()}")
    try:
        code: int = handlers[invocation.subcommand](invocation)
    except CoverError as e:
        return handle_error(e)
    logger.info(f"{invocation.subcommand} finished in {time.perf_counter() - start:.2f}s (exit {code})")
    return code
