from __future__ import annotations

import os
import sys
import time

from loguru import logger as _logger

_STARTED_AT = time.perf_counter()

# Initialize the logger
_logger.remove()

fmt = "<green>{extra[elapsed]: <11}</green> || <level>{message}</level>"

_sink_id: int | None = None


def set_level(level: str) -> None:
    """
    (Re)install the stderr sink at the given level.
    """

    global _sink_id

    if _sink_id is not None:
        _logger.remove(_sink_id)
    _sink_id = _logger.add(
        sys.stderr,
        format=fmt,
        colorize=True,
        filter="latcov",
        level=level,
    )


def silence() -> None:
    global _sink_id

    if _sink_id is not None:
        _logger.remove(_sink_id)
        _sink_id = None


# Patch the logger to add the wall time elapsed since import to the extra field
def elapsed(record):
    seconds = time.perf_counter() - _STARTED_AT
    minutes = seconds // 60
    hours = minutes // 60
    record["extra"].update(elapsed=f"{int(hours):02d}:{int(minutes % 60):02d}:{(seconds % 60):05.2f}")


set_level(os.environ.get("LATCOV_LOG_LEVEL", "INFO"))

logger = _logger.patch(elapsed)

logger.debug("Logger initialized")
