from __future__ import annotations

from latcov.exceptions.base import LatcovError


class BudgetExceeded(LatcovError):
    """Raised when a search spends more nodes (or seconds) than its budget allows."""

    exit_code = 3

    def __init__(self, spent: int, limit: int, what: str = "nodes"):
        self.spent = spent
        self.limit = limit
        self.what = what
        super().__init__(f"Search budget exhausted: {spent} {what} spent, limit {limit}")


class SamplingFailed(LatcovError):
    def __init__(self, stage: str, attempts: int):
        self.stage = stage
        self.attempts = attempts
        super().__init__(f"Random selection for {stage} failed after {attempts} attempts")


class NotFound(LatcovError):
    def __init__(self, what: str):
        self.what = what
        super().__init__(f"Not found: {what}")
