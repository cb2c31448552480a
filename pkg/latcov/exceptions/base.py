from __future__ import annotations


class LatcovError(Exception):
    """Base class for all exceptions raised by latcov."""

    exit_code = 1
