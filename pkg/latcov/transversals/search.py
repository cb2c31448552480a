from __future__ import annotations

from collections.abc import Iterator, Mapping
from enum import StrEnum
from typing import TYPE_CHECKING

from latcov.logger import logger
from latcov.transversals.partial_transversal import PartialTransversal
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


class EnumerationMode(StrEnum):
    ALL = "all"
    MAXIMAL_ONLY = "maximalOnly"


def _walk(
    square: LatinSquare,
    d: int,
    budget: SearchBudget,
    *,
    fixed: Mapping[int, int] | None = None,
    forbidden: frozenset[int] = frozenset(),
) -> Iterator[list[int]]:
    """
    Yield the deficit-d partial transversals as row -> column lists (-1 for a skipped row).

    Rows are visited in ascending order: each row first takes every admissible column
    in ascending order, then is skipped if skips remain. `fixed` pins the column of some
    rows (those rows are never skipped); `forbidden` holds cell indices r*n+c never used.
    The yielded list is reused between solutions.
    """

    n, grid = square.n, square.grid
    fixed = fixed or {}
    chosen = [-1] * n
    fixed_cols = 0
    fixed_syms = 0
    for r, c in fixed.items():
        fixed_cols |= 1 << c
        fixed_syms |= 1 << grid[r][c]

    def rec(r: int, cols: int, syms: int, skips: int) -> Iterator[list[int]]:
        budget.spend()
        if r == n:
            if not skips:
                yield chosen
            return
        row = grid[r]
        if r in fixed:
            chosen[r] = fixed[r]
            yield from rec(r + 1, cols, syms, skips)
            chosen[r] = -1
            return
        if skips < n - r:
            for c in range(n):
                s = row[c]
                if cols >> c & 1 or syms >> s & 1 or r * n + c in forbidden:
                    continue
                chosen[r] = c
                yield from rec(r + 1, cols | 1 << c, syms | 1 << s, skips)
            chosen[r] = -1
        if skips:
            yield from rec(r + 1, cols, syms, skips - 1)

    # fixed rows must not be skipped, so they cannot absorb skips
    if len(fixed) <= n - d:
        yield from rec(0, fixed_cols, fixed_syms, d)


def _to_pt(square: LatinSquare, chosen: list[int]) -> PartialTransversal:
    return PartialTransversal(square, ((r, c, square.grid[r][c]) for r, c in enumerate(chosen) if c >= 0))


def _is_maximal_choice(square: LatinSquare, chosen: list[int]) -> bool:
    n = square.n
    used_cols = {c for c in chosen if c >= 0}
    used_syms = {square.grid[r][c] for r, c in enumerate(chosen) if c >= 0}
    free_syms = [s for s in range(n) if s not in used_syms]
    for r, c in enumerate(chosen):
        if c < 0:
            for s in free_syms:
                if square.col_of(r, s) not in used_cols:
                    return False
    return True


def enumerate_pts(
    square: LatinSquare,
    d: int,
    mode: EnumerationMode | str = EnumerationMode.ALL,
    *,
    budget: SearchBudget | None = None,
) -> Iterator[PartialTransversal]:
    """
    Stream every partial transversal of deficit d exactly once.

    Args:
        square: The Latin square.
        d: The deficit, 0 <= d <= n.
        mode: `all`, or `maximalOnly` to keep only partial transversals with no extending entry.
        budget: The node allowance; built from the environment when omitted.

    Raises:
        BudgetExceeded: the search expands more nodes than allowed.
    """

    if not 0 <= d <= square.n:
        raise ValueError(f"Deficit {d} outside [0, {square.n}]")
    maximal_only = EnumerationMode(mode) is EnumerationMode.MAXIMAL_ONLY
    for chosen in _walk(square, d, resolve(budget)):
        if maximal_only and not _is_maximal_choice(square, chosen):
            continue
        yield _to_pt(square, chosen)


def count_pts(
    square: LatinSquare, d: int, *, maximal_only: bool = False, budget: SearchBudget | None = None
) -> int:
    budget = resolve(budget)
    if maximal_only:
        total = sum(1 for chosen in _walk(square, d, budget) if _is_maximal_choice(square, chosen))
    else:
        total = sum(1 for _ in _walk(square, d, budget))
    logger.debug(f"Counted {total} deficit-{d} partial transversals ({budget.spent} nodes)")
    return total


def count_transversals(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    Count the transversals of the square.

    Raises:
        BudgetExceeded: the search expands more nodes than allowed.
    """

    return count_pts(square, 0, budget=budget)


def find_pt(square: LatinSquare, d: int, *, budget: SearchBudget | None = None) -> PartialTransversal | None:
    """
    Return the first partial transversal of deficit d in enumeration order, if any.
    """

    chosen = next(_walk(square, d, resolve(budget)), None)
    return None if chosen is None else _to_pt(square, chosen)


def min_deficit(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    Return the smallest deficit of a partial transversal of the square.
    """

    budget = resolve(budget)
    for d in range(square.n + 1):
        if next(_walk(square, d, budget), None) is not None:
            return d
    # the empty set is a partial transversal of deficit n
    return square.n


def transversal_through(
    square: LatinSquare, entry: tuple[int, int, int], *, budget: SearchBudget | None = None
) -> PartialTransversal | None:
    """
    Return a transversal of the square containing `entry`, or None when no transversal does.
    """

    r, c, _ = entry
    chosen = next(_walk(square, 0, resolve(budget), fixed={r: c}), None)
    return None if chosen is None else _to_pt(square, chosen)


def transversal_avoiding(
    square: LatinSquare, forbidden: frozenset[int], *, budget: SearchBudget | None = None
) -> Iterator[PartialTransversal]:
    """
    Stream the transversals using none of the cells r*n+c listed in `forbidden`.
    """

    for chosen in _walk(square, 0, resolve(budget), forbidden=forbidden):
        yield _to_pt(square, chosen)
