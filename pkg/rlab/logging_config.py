"""
Logging configuration for the rlab package.

Every module logs through a child of the ``rlab`` logger, e.g.
``rlab.building.ball``; ``setup_logging`` configures the root handler once.
"""
import logging
import sys
from typing import Optional

from config import LOG_FORMAT, LOG_LEVEL

_configured = False


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Configure stdout logging for the application.

    Args:
        level: Overrides ``LOG_LEVEL`` from the environment (CLI ``--log-level``).

    Returns:
        The pipeline logger.
    """
    global _configured
    resolved = getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO)
    if not _configured:
        logging.basicConfig(
            level=resolved,
            format=LOG_FORMAT,
            handlers=[logging.StreamHandler(sys.stdout)],
        )
        _configured = True
    logging.getLogger("rlab").setLevel(resolved)
    return logging.getLogger("rlab.pipeline")


def get_logger(name: str) -> logging.Logger:
    """Return the ``rlab.<name>`` logger."""
    return logging.getLogger(f"rlab.{name}")


# Create the main logger
logger = setup_logging()
