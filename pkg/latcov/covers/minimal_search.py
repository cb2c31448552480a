from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.covers.bounds import mu_bound
from latcov.covers.cover import Cover, cross_cover
from latcov.exceptions import BudgetExceeded
from latcov.logger import logger
from latcov.transversals import find_pt
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare

EXACT_SPECTRUM_MAX_ORDER = 7


class _MinimalCoverSearch:
    """
    Row-by-row search over the minimal covers of a square.

    Rows are filled in order, every row receiving a nonempty set of cells chosen column
    by column. Redundancy is hereditary (adding entries only raises counts), so a branch
    is abandoned as soon as any entry becomes redundant. In a minimal cover every entry
    uniquely represents some line, so the final size is at most the number of lines that
    can still end up represented exactly once; branches whose bound cannot beat `lo` or
    whose least size exceeds `hi` are cut.
    """

    def __init__(self, square: LatinSquare, budget: SearchBudget, lo: int, hi: int) -> None:
        n = square.n
        self.square = square
        self.n = n
        self.budget = budget
        self.lo = lo
        self.hi = hi
        self.rows = [0] * n
        self.cols = [0] * n
        self.syms = [0] * n
        self.by_col: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        self.by_sym: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        self.by_row: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        self.chosen: list[tuple[int, int, int]] = []
        self.unique_rows_done = 0

    def _redundant(self, e: tuple[int, int, int]) -> bool:
        r, c, s = e
        return self.rows[r] >= 2 and self.cols[c] >= 2 and self.syms[s] >= 2

    def _push(self, e: tuple[int, int, int]) -> bool:
        """
        Add an entry; return False when the addition leaves a redundant entry.
        """

        r, c, s = e
        self.rows[r] += 1
        self.cols[c] += 1
        self.syms[s] += 1
        self.by_row[r].append(e)
        self.by_col[c].append(e)
        self.by_sym[s].append(e)
        self.chosen.append(e)
        for line in (self.by_row[r], self.by_col[c], self.by_sym[s]):
            for other in line:
                if self._redundant(other):
                    return False
        return True

    def _pop(self) -> None:
        r, c, s = self.chosen.pop()
        self.rows[r] -= 1
        self.cols[c] -= 1
        self.syms[s] -= 1
        self.by_row[r].pop()
        self.by_col[c].pop()
        self.by_sym[s].pop()

    def _upper(self, r: int) -> int:
        loose = sum(1 for k in self.cols if k <= 1) + sum(1 for k in self.syms if k <= 1)
        return self.unique_rows_done + (self.n - r) + loose

    def run(self, visit: Callable[[list[tuple[int, int, int]]], bool]) -> None:
        """
        Call `visit` on every minimal cover whose size lies in [lo, hi]; stop when it returns True.
        """

        self._stop = False
        self._visit = visit
        self._row(0)

    def _row(self, r: int) -> None:
        if self._stop:
            return
        self.budget.spend()
        n = self.n
        if r == n:
            size = len(self.chosen)
            if self.lo <= size <= self.hi and all(self.cols) and all(self.syms):
                self._stop = bool(self._visit(self.chosen))
            return
        if len(self.chosen) + (n - r) > self.hi or self._upper(r) < self.lo:
            return
        self._cell(r, 0)

    def _cell(self, r: int, c: int) -> None:
        if self._stop:
            return
        n = self.n
        if c == n:
            if self.rows[r]:
                self.unique_rows_done += self.rows[r] == 1
                self._row(r + 1)
                self.unique_rows_done -= self.rows[r] == 1
            return
        self.budget.spend()
        if len(self.chosen) + (n - r - 1) < self.hi:
            if self._push(self.square.entry(r, c)):
                if self._upper(r) >= self.lo:
                    self._cell(r, c + 1)
            self._pop()
        self._cell(r, c + 1)


def largest_minimal_cover(
    square: LatinSquare,
    *,
    exhaustive: bool = False,
    ceiling: int | None = None,
    budget: SearchBudget | None = None,
) -> Cover:
    """
    Return a minimal cover of greatest size, among those of size at most `ceiling`.

    The search starts from a cross cover (size 2n-1) and only looks for larger ones.
    `ceiling` defaults to the bound mu(n); the search stops as soon as it is met unless
    `exhaustive` is set. A ceiling of 3n searches every minimal cover.

    Raises:
        BudgetExceeded: the search expands more nodes than allowed.
    """

    budget = resolve(budget)
    n = square.n
    best: list[tuple[int, int, int]] = list(cross_cover(square, 0, 0))
    ceiling = mu_bound(n) if ceiling is None else ceiling

    search = _MinimalCoverSearch(square, budget, len(best) + 1, ceiling)

    def visit(chosen: list[tuple[int, int, int]]) -> bool:
        nonlocal best
        best = list(chosen)
        search.lo = len(best) + 1
        return len(best) >= ceiling and not exhaustive

    search.run(visit)
    logger.debug(f"Largest minimal cover of an order-{n} square has size {len(best)} ({budget.spent} nodes)")
    return Cover(square, best)


def max_minimal_cover_size(
    square: LatinSquare,
    *,
    exhaustive: bool = False,
    ceiling: int | None = None,
    budget: SearchBudget | None = None,
) -> int:
    return len(largest_minimal_cover(square, exhaustive=exhaustive, ceiling=ceiling, budget=budget))


@dataclass(slots=True)
class SpectrumReport:
    """
    Which minimal cover sizes a square achieves in a range, with one witness per achieved size.

    `achievable[c]` is None when the search for size c ran out of budget.
    """

    order: int
    low: int
    high: int
    exact: bool
    achievable: dict[int, bool | None] = field(default_factory=dict)
    witnesses: dict[int, Cover] = field(default_factory=dict)

    @property
    def sizes(self) -> set[int]:
        return {c for c, ok in self.achievable.items() if ok}

    @property
    def gaps(self) -> list[int]:
        return [c for c, ok in self.achievable.items() if ok is False]

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "low": self.low,
            "high": self.high,
            "exact": self.exact,
            "achievable": {str(c): ok for c, ok in self.achievable.items()},
            "witnesses": {str(c): cover.to_list() for c, cover in self.witnesses.items()},
        }

    def to_csv(self, witness_files: dict[int, str] | None = None) -> str:
        witness_files = witness_files or {}
        lines = ["c,achievable,witness-file"]
        for c, ok in self.achievable.items():
            verdict = "unknown" if ok is None else str(ok).lower()
            lines.append(f"{c},{verdict},{witness_files.get(c, '')}")
        return "\n".join(lines) + "\n"

    def summary(self) -> None:
        print(f"## Minimal cover spectrum of an order-{self.order} square ({'exact' if self.exact else 'witness'})")
        headers = ["Size", "Achievable"]
        table = [[c, "?" if ok is None else ("yes" if ok else "no")] for c, ok in self.achievable.items()]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))

    def plot(self, path: str | Path | None = None) -> None:
        from matplotlib import pyplot as plt

        sizes = list(self.achievable)
        plt.bar([str(c) for c in sizes], [1 if self.achievable[c] else 0 for c in sizes])
        plt.title(f"Minimal cover sizes, order {self.order}")
        plt.xlabel("Size")
        plt.ylabel("Achievable")
        if path is not None:
            plt.savefig(path)
        else:
            plt.show()
        plt.close()


def minimal_cover_spectrum(
    square: LatinSquare,
    low: int,
    high: int,
    *,
    exact: bool | None = None,
    budget: SearchBudget | None = None,
) -> SpectrumReport:
    """
    Decide for every c in [low, high] whether the square has a minimal c-cover.

    Exact mode (default up to order 7) runs one search over all minimal covers in the
    range. Witness mode seeds the sizes given by a transversal and a cross cover and
    searches each remaining size separately, recording sizes whose search exhausts the
    budget as unknown.

    Raises:
        BudgetExceeded: the exact search expands more nodes than allowed.
    """

    n = square.n
    exact = n <= EXACT_SPECTRUM_MAX_ORDER if exact is None else exact
    budget = resolve(budget)
    report = SpectrumReport(order=n, low=low, high=high, exact=exact)
    wanted = range(max(low, n), min(high, mu_bound(n)) + 1)

    if exact:
        search = _MinimalCoverSearch(square, budget, low, high)

        def visit(chosen: list[tuple[int, int, int]]) -> bool:
            report.witnesses.setdefault(len(chosen), Cover(square, chosen))
            return all(c in report.witnesses for c in wanted)

        search.run(visit)
        report.achievable = {c: c in report.witnesses for c in range(low, high + 1)}
        report.witnesses = dict(sorted(report.witnesses.items()))
        return report

    transversal = find_pt(square, 0, budget=budget)
    if transversal is not None:
        report.witnesses[n] = Cover(square, transversal)
    report.witnesses[2 * n - 1] = cross_cover(square, 0, 0)
    for c in range(low, high + 1):
        if c not in wanted:
            report.achievable[c] = False
            continue
        if c in report.witnesses:
            report.achievable[c] = True
            continue
        found: list[Cover] = []
        search = _MinimalCoverSearch(square, SearchBudget(budget.nodes, budget.seconds), c, c)

        def take(chosen: list[tuple[int, int, int]]) -> bool:
            found.append(Cover(square, chosen))
            return True

        try:
            search.run(take)
        except BudgetExceeded:
            logger.warning(f"Size {c}: search budget exhausted, achievability unknown")
            report.achievable[c] = None
            continue
        report.achievable[c] = bool(found)
        if found:
            report.witnesses[c] = found[0]
    report.witnesses = {c: w for c, w in sorted(report.witnesses.items()) if low <= c <= high}
    return report
