#!/usr/bin/env python3
"""
Main entry point for the four-cap coverage engine
"""
import logging
import sys
from typing import Optional, Sequence

import logManager

import config_manager
from cli import dispatch
from cli.error_handlers import handle_error
from services.exceptions import CoverError

logger: logging.Logger = logManager.logger.get_logger(__name__)


def _log_to_stderr() -> None:
    """Move stream handlers writing to stdout onto stderr; stdout carries results only."""
    loggers: list[logging.Logger] = [logging.getLogger()] + [
        item for item in logging.Logger.manager.loggerDict.values() if isinstance(item, logging.Logger)]
    for each in loggers:
        for handler in each.handlers:
            if isinstance(handler, logging.StreamHandler) and handler.stream is sys.stdout:
                handler.setStream(sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse the command line, load the configuration and run the subcommand"""
    _log_to_stderr()
    try:
        invocation, engine_config = config_manager.load(argv)
    except CoverError as e:
        return handle_error(e)
    _log_to_stderr()
    try:
        return dispatch(invocation, engine_config)
    except KeyboardInterrupt:
        logger.info("Received KeyboardInterrupt, stopping")
        return 130


if __name__ == '__main__':
    sys.exit(main())
