"""
This module provides the Config class for managing the YAML configuration.
"""
from pathlib import Path
from typing import Any, Optional, cast
from copy import deepcopy
import os
import logging
import yaml

import logManager

from services.sampling import DEFAULT_BATCH_SIZE, DEFAULT_SEED
from sphere_objects.quadrature_object import QuadratureSpec

logger: logging.Logger = logManager.logger.get_logger(__name__)

CONFIG_FILE: str = "config.yaml"
DEFAULT_CONFIG_DIR: str = "~/.cap_cover"

DEFAULTS: dict[str, dict[str, Any]] = {
    "quadrature": {
        "abs_tol": 1.0e-9,
        "rel_tol": 1.0e-9,
        "max_subdivisions": 2 ** 15,
        "table_nodes": 48,
    },
    "monte_carlo": {
        "seed": DEFAULT_SEED,
        "batch_size": DEFAULT_BATCH_SIZE,
        "threads": 1,
    },
    "histogram": {
        "bins": 100,
    },
    "system": {
        "loglevel": "INFO",
    },
}


class NoAliasDumper(yaml.SafeDumper):
    """
    YAML dumper that ignores aliases to prevent the use of anchors and references in the output.
    """
    def ignore_aliases(self, data: Any) -> bool:
        return True


def _open_yaml(path: str) -> Any:
    """
    Open a YAML file and return its contents.

    Args:
        path (str): The path to the YAML file.

    Returns:
        Any: The contents of the YAML file.
    """
    with open(path, 'r', encoding="utf-8") as fp:
        return yaml.safe_load(fp)


def _write_yaml(path: str, contents: Any) -> None:
    """
    Write contents to a YAML file.

    Args:
        path (str): The path to the YAML file.
        contents (Any): The contents to write to the YAML file.
    """
    with open(path, 'w', encoding="utf-8") as fp:
        yaml.dump(contents, fp, Dumper=NoAliasDumper, allow_unicode=True, sort_keys=False)


def dump_yaml(contents: Any) -> str:
    """Render contents as YAML text, the same way files are written."""
    return yaml.dump(contents, Dumper=NoAliasDumper, allow_unicode=True, sort_keys=False)


class Config:
    """
    Config class for managing the engine configuration stored in config.yaml.
    """

    def __init__(self, config_dir: Optional[str] = None, debug: bool = False) -> None:
        """
        Initialize the Config class. Nothing is created on disk until save_config.

        Args:
            config_dir (Optional[str]): Configuration directory; the default is ~/.cap_cover.
            debug (bool): Force the DEBUG log level.
        """
        self.configDir: str = str(Path(config_dir or DEFAULT_CONFIG_DIR).expanduser())
        self.argDebug: bool = debug
        self.yaml_config: dict[str, Any] = deepcopy(DEFAULTS)

    def _set_default_config_values(self, config: dict[str, Any]) -> dict[str, Any]:
        """
        Set default configuration values, section by section and key by key.

        Args:
            config (dict[str, Any]): The configuration dictionary.

        Returns:
            dict[str, Any]: The updated configuration dictionary.
        """
        for section, values in DEFAULTS.items():
            current: Any = config.get(section)
            if not isinstance(current, dict):
                config[section] = deepcopy(values)
                continue
            for key, value in values.items():
                current.setdefault(key, value)
        return config

    def _upgrade_config(self, config: dict[str, Any]) -> dict[str, Any]:
        """
        Apply the debug flag to the log level and configure the logger.

        Args:
            config (dict[str, Any]): The configuration dictionary.

        Returns:
            dict[str, Any]: The upgraded configuration dictionary.
        """
        if self.argDebug:
            config["system"]["loglevel"] = "DEBUG"
        logManager.logger.configure_logger(config["system"]["loglevel"])
        logger.debug(f"Debug logging {'enabled' if self.argDebug else 'disabled'}!")
        return config

    def _load_yaml_file(self, filename: str, default: Optional[dict[str, Any]] = None) -> Optional[dict[str, Any]]:
        """
        Load a YAML file and return its contents.

        Args:
            filename (str): The name of the YAML file.
            default (Optional[dict[str, Any]]): The default value if the file does not exist or is empty.

        Returns:
            Optional[dict[str, Any]]: The contents of the YAML file or the default value.
        """
        path: str = os.path.join(self.configDir, filename)
        if os.path.exists(path):
            contents: Any = _open_yaml(path)
            if contents is None:
                return default
            if not isinstance(contents, dict):
                raise ValueError(f"{path} does not hold a mapping")
            return contents
        return default

    def load_config(self) -> None:
        """
        Load the configuration from config.yaml, falling back to defaults.
        """
        try:
            config: dict[str, Any] = cast(dict[str, Any], self._load_yaml_file(CONFIG_FILE, {}))
            config = self._set_default_config_values(config)
            config = self._upgrade_config(config)
            self.yaml_config = config
            logger.debug(f"Config loaded from {self.configDir}")
        except (OSError, yaml.YAMLError, ValueError) as exc:
            logger.exception("CRITICAL! Config file was not loaded")
            raise SystemExit("CRITICAL! Config file was not loaded") from exc

    def save_config(self, backup: bool = False) -> str:
        """
        Save the current configuration to config.yaml.

        Args:
            backup (bool): Whether to write into the backup subdirectory.

        Returns:
            str: The path written.
        """
        path: str = os.path.join(self.configDir, "backup") if backup else self.configDir
        os.makedirs(path, exist_ok=True)
        file_path: str = os.path.join(path, CONFIG_FILE)
        _write_yaml(file_path, self.yaml_config)
        logger.debug("Dump config file " + file_path)
        return file_path

    def reset_config(self) -> None:
        """
        Back up the configuration, delete it and reload the defaults.
        """
        if os.path.exists(os.path.join(self.configDir, CONFIG_FILE)):
            self.save_config(backup=True)
        try:
            for yaml_file in Path(self.configDir).glob("*.yaml"):
                os.remove(yaml_file)
        except OSError:
            logger.exception("Something went wrong when deleting the config")
        self.load_config()

    def section(self, name: str) -> dict[str, Any]:
        """One section of the loaded configuration."""
        return self.yaml_config[name]

    def quadrature_spec(self) -> QuadratureSpec:
        """QuadratureSpec built from the quadrature section."""
        return QuadratureSpec.from_config(self.section("quadrature"))
