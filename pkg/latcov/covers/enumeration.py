from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from typing import TYPE_CHECKING

from latcov.covers.cover import Cover
from latcov.logger import logger
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


class _CoverSearch:
    """
    Exact enumeration of the covers of a given size.

    Cells are numbered r*n + c and the 3n lines are numbered rows first, then columns,
    then symbols; both are handled as integer bitmasks. At each node the search branches
    on the unrepresented line with the fewest available cells: the i-th candidate cell
    is taken while the first i-1 are excluded for the rest of that branch, so every cover
    is reached once. When all lines are represented the free slots are filled with every
    combination of the available cells.
    """

    __slots__ = ("square", "n", "line_cells", "cell_lines", "budget", "all_lines")

    def __init__(self, square: LatinSquare, budget: SearchBudget) -> None:
        n = square.n
        self.square = square
        self.n = n
        self.budget = budget
        self.line_cells = [0] * (3 * n)
        self.cell_lines = [0] * (n * n)
        for r, c, s in square.entries():
            cell = r * n + c
            for line in (r, n + c, 2 * n + s):
                self.line_cells[line] |= 1 << cell
                self.cell_lines[cell] |= 1 << line
        self.all_lines = (1 << 3 * n) - 1

    def run(self, size: int, base: Iterable[int] = ()) -> Iterator[tuple[int, ...]]:
        chosen = sorted(set(base))
        covered = 0
        blocked = 0
        for cell in chosen:
            covered |= self.cell_lines[cell]
            blocked |= 1 << cell
        slots = size - len(chosen)
        if slots < 0:
            return
        yield from self._rec(chosen, slots, covered, blocked)

    def _rec(self, chosen: list[int], slots: int, covered: int, blocked: int) -> Iterator[tuple[int, ...]]:
        self.budget.spend()
        n = self.n
        uncovered = self.all_lines & ~covered
        if not uncovered:
            free = self._available(blocked)
            for extra in itertools.combinations(free, slots):
                yield tuple(sorted((*chosen, *extra)))
            return
        if not slots:
            return
        block = (1 << n) - 1
        worst = max(
            (uncovered & block).bit_count(),
            (uncovered >> n & block).bit_count(),
            (uncovered >> 2 * n & block).bit_count(),
        )
        if worst > slots:
            return

        best_line, best_mask, best_count = -1, 0, n + 1
        line = 0
        rest = uncovered
        while rest:
            if rest & 1:
                mask = self.line_cells[line] & ~blocked
                count = mask.bit_count()
                if count < best_count:
                    best_line, best_mask, best_count = line, mask, count
                    if count == 0:
                        return
            rest >>= 1
            line += 1

        excluded = 0
        mask = best_mask
        while mask:
            low = mask & -mask
            cell = low.bit_length() - 1
            chosen.append(cell)
            yield from self._rec(chosen, slots - 1, covered | self.cell_lines[cell], blocked | excluded | low)
            chosen.pop()
            excluded |= low
            mask ^= low

    def _available(self, blocked: int) -> list[int]:
        free = ~blocked & ((1 << self.n * self.n) - 1)
        out = []
        while free:
            low = free & -free
            out.append(low.bit_length() - 1)
            free ^= low
        return out


def cover_cells(
    square: LatinSquare,
    size: int,
    *,
    base: Iterable[tuple[int, int, int]] = (),
    budget: SearchBudget | None = None,
) -> Iterator[tuple[int, ...]]:
    """
    Stream the covers of the given size as sorted tuples of cell indices r*n + c.
    """

    n = square.n
    search = _CoverSearch(square, resolve(budget))
    yield from search.run(size, (r * n + c for r, c, _ in base))


def enumerate_covers(
    square: LatinSquare,
    size: int,
    *,
    base: Iterable[tuple[int, int, int]] = (),
    budget: SearchBudget | None = None,
) -> Iterator[Cover]:
    """
    Stream every cover of the exact given size once, optionally only those containing `base`.

    Raises:
        BudgetExceeded: the search expands more nodes than allowed.
    """

    n, grid = square.n, square.grid
    for cells in cover_cells(square, size, base=base, budget=budget):
        yield Cover(square, [(cell // n, cell % n, grid[cell // n][cell % n]) for cell in cells])


def count_covers(
    square: LatinSquare,
    size: int,
    *,
    base: Iterable[tuple[int, int, int]] = (),
    budget: SearchBudget | None = None,
) -> int:
    budget = resolve(budget)
    total = sum(1 for _ in cover_cells(square, size, base=base, budget=budget))
    logger.debug(f"Counted {total} covers of size {size} ({budget.spent} nodes)")
    return total
