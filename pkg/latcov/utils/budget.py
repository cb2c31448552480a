from __future__ import annotations

import os
import time

from latcov.exceptions import BudgetExceeded

DEFAULT_NODE_BUDGET = 10**9


class SearchBudget:
    """
    Node (and optional wall-clock) allowance shared by the exhaustive searches.

    Every search calls `spend()` once per node it expands; exceeding the node cap
    or the time cap raises `BudgetExceeded`.
    """

    __slots__ = ("nodes", "seconds", "spent", "_deadline")

    def __init__(self, nodes: int = DEFAULT_NODE_BUDGET, seconds: float | None = None) -> None:
        self.nodes = nodes
        self.seconds = seconds
        self.spent = 0
        self._deadline = time.monotonic() + seconds if seconds is not None else None

    def __repr__(self) -> str:
        return f"SearchBudget(spent={self.spent}, nodes={self.nodes})"

    @classmethod
    def from_env(cls) -> SearchBudget:
        value = os.environ.get("LATCOV_BUDGET")
        return cls(nodes=int(value)) if value else cls()

    def spend(self, k: int = 1) -> None:
        self.spent += k
        if self.spent > self.nodes:
            raise BudgetExceeded(self.spent, self.nodes)
        # the clock is only consulted every 4096 nodes
        if self._deadline is not None and not self.spent & 0xFFF and time.monotonic() > self._deadline:
            raise BudgetExceeded(int(self.seconds or 0), int(self.seconds or 0), what="seconds")


def resolve(budget: SearchBudget | None) -> SearchBudget:
    return budget if budget is not None else SearchBudget.from_env()
