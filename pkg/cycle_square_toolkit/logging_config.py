import logging
import sys
from typing import Optional

DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level_name: Optional[str] = None):
    """
    Configures logging for the application.

    The level comes from the caller (the CLI's --log-level option), defaulting
    to WARNING. Records go to stderr because stdout carries command output.
    """
    log_level_name = (level_name or DEFAULT_LOG_LEVEL).upper()
    log_level = getattr(logging, log_level_name, logging.WARNING)

    logging.basicConfig(
        level=log_level,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    # Set specific levels for noisy libraries
    logging.getLogger("networkx").setLevel(logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.info(f"Logging configured with level: {logging.getLevelName(root_logger.level)}")
