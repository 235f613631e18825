"""Command handler for showing, saving and resetting the YAML configuration."""
import logging

import logManager

from cli.error_handlers import EXIT_OK
from config_manager.config_handler import Config, dump_yaml
from config_manager.runtime_config_handler import CliInvocation

logger: logging.Logger = logManager.logger.get_logger(__name__)


class ConfigCommands:
    """
    Handler for `config show|save|reset`.
    """

    def __init__(self, engine_config: Config) -> None:
        self.engine_config: Config = engine_config

    def config(self, invocation: CliInvocation) -> int:
        """
        Print the effective configuration, write it to config.yaml or restore the defaults.

        Returns:
            int: Exit code.
        """
        if invocation.kind == "save":
            path: str = self.engine_config.save_config()
            print(f"configuration written to {path}")
        elif invocation.kind == "reset":
            self.engine_config.reset_config()
            print(f"configuration in {self.engine_config.configDir} reset to defaults")
        else:
            print(dump_yaml(self.engine_config.yaml_config), end="")
        return EXIT_OK
