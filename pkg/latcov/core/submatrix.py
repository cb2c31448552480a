from __future__ import annotations

import itertools
import math
from typing import TYPE_CHECKING, NamedTuple

from latcov.exceptions import BudgetExceeded
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


class SubmatrixCoverage(NamedTuple):
    symbols: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def submatrix_symbol_coverage(
    square: LatinSquare, a: int, b: int, *, budget: SearchBudget | None = None
) -> SubmatrixCoverage:
    """
    Find the largest number of distinct symbols in an a x b submatrix.

    Every pair (row a-subset, column b-subset) is examined; the search stops early
    once a submatrix reaches min(n, a*b) symbols.

    Raises:
        BudgetExceeded: the number of subset pairs exceeds the budget.
    """

    n = square.n
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"Submatrix {a}x{b} does not fit an order-{n} square")
    budget = resolve(budget)
    pairs = math.comb(n, a) * math.comb(n, b)
    if pairs > budget.nodes - budget.spent:
        raise BudgetExceeded(budget.spent + pairs, budget.nodes)

    ceiling = min(n, a * b)
    col_sets = list(itertools.combinations(range(n), b))
    # row_masks[r][j]: symbols of row r within the j-th column subset
    row_masks = [[sum(1 << square.grid[r][c] for c in cols) for cols in col_sets] for r in range(n)]

    best = SubmatrixCoverage(0, (), ())
    for rows in itertools.combinations(range(n), a):
        for j, cols in enumerate(col_sets):
            mask = 0
            for r in rows:
                mask |= row_masks[r][j]
            count = mask.bit_count()
            if count > best.symbols:
                best = SubmatrixCoverage(count, rows, cols)
                if count == ceiling:
                    budget.spend(pairs)
                    return best
    budget.spend(pairs)
    return best
