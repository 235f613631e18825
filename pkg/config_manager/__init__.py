"""
This module initializes the configuration management system of the cap coverage engine.
It parses the command line, loads the YAML configuration and builds the runtime invocation.
"""
from typing import Optional, Sequence

from . import argument_handler
from . import config_handler
from . import runtime_config_handler

from .config_handler import Config
from .runtime_config_handler import CliInvocation


def load(argv: Optional[Sequence[str]] = None) -> tuple[CliInvocation, Config]:
    """
    Parse arguments, restore the configuration and merge both.

    Args:
        argv (Optional[Sequence[str]]): Arguments without the program name.

    Returns:
        tuple[CliInvocation, Config]: The invocation and the loaded configuration.
    """
    args = argument_handler.parse_arguments(argv)
    engine_config: Config = config_handler.Config(args.config_path, args.debug)
    engine_config.load_config()
    return runtime_config_handler.CliInvocation.populate(args, engine_config), engine_config
