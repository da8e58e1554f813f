"""
Logging setup for CLI runs.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(level: str = "INFO") -> None:
    """Configure the root logger once per process."""
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        numeric = logging.INFO
    logging.basicConfig(level=numeric, format=LOG_FORMAT)


def make_log(
    logger: logging.Logger, log_callback: Optional[Callable[[str], None]] = None
) -> Callable[[str], None]:
    """Return a ``log(message)`` function routed to the callback or the logger."""

    def log(message: str) -> None:
        if log_callback:
            log_callback(message)
        else:
            logger.info(message)

    return log
