from __future__ import annotations

import itertools
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from typing import TYPE_CHECKING

from latcov.core.isotopism import Conjugate, conjugate
from latcov.core.latin_square import LatinSquare
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.typings import Grid


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        out.append(cycle)
    return out


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(perm)))


def cycle_row(lengths: Sequence[int]) -> tuple[int, ...]:
    """
    The least row, below the identity row, whose permutation has the given cycle lengths.

    Cycles are laid out in ascending length on consecutive symbols: (0 1)(2 3 4) gives 1 0 3 4 2.
    """

    row: list[int] = []
    start = 0
    for length in sorted(lengths):
        row.extend(start + (i + 1) % length for i in range(length))
        start += length
    return tuple(row)


def row_pair_permutation(square: LatinSquare, top: int, second: int) -> list[int]:
    """
    The symbol permutation L[top][c] -> L[second][c].
    """

    perm = [0] * square.n
    for a, b in zip(square.grid[top], square.grid[second]):
        perm[a] = b
    return perm


def _relabelings(perm: Sequence[int]) -> Iterator[list[int]]:
    """
    Every symbol relabeling turning `perm` into the canonical row of its cycle type.
    """

    by_length: dict[int, list[list[int]]] = defaultdict(list)
    for cycle in cycles(perm):
        by_length[len(cycle)].append(cycle)
    lengths = sorted(by_length)
    orderings = [list(itertools.permutations(by_length[length])) for length in lengths]
    n = len(perm)
    for choice in itertools.product(*orderings):
        ordered = [cycle for group in choice for cycle in group]
        for starts in itertools.product(*(range(len(cycle)) for cycle in ordered)):
            label = [0] * n
            position = 0
            for cycle, start in zip(ordered, starts):
                length = len(cycle)
                for i in range(length):
                    label[cycle[(start + i) % length]] = position + i
                position += length
            yield label


def _image(square: LatinSquare, top: int, label: Sequence[int]) -> Grid:
    n, grid = square.n, square.grid
    order = [0] * n
    for c, s in enumerate(grid[top]):
        order[label[s]] = c
    rows = [tuple(label[row[c]] for c in order) for row in grid]
    return tuple(sorted(rows))


def _minimizers(square: LatinSquare, budget: SearchBudget) -> tuple[Grid, int]:
    n = square.n
    if n == 1:
        return square.grid, 1
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    perms = {pair: row_pair_permutation(square, *pair) for pair in pairs}
    rows = {pair: cycle_row(cycle_type(perm)) for pair, perm in perms.items()}
    least = min(rows.values())
    best: Grid | None = None
    count = 0
    for pair in pairs:
        if rows[pair] != least:
            continue
        for label in _relabelings(perms[pair]):
            budget.spend()
            image = _image(square, pair[0], label)
            if best is None or image < best:
                best, count = image, 1
            elif image == best:
                count += 1
    assert best is not None
    return best, count


def canonical_isotopy_form(square: LatinSquare, *, budget: SearchBudget | None = None) -> LatinSquare:
    """
    Return the lexicographically least (row-major) square isotopic to `square`.

    The least image has the identity as first row and, as second row, the least row
    whose permutation from the first has the cycle type of some pair of rows. Only the
    row pairs of that least cycle type and the symbol relabelings matching their cycles
    are tried; the other rows then follow in sorted order.

    Raises:
        BudgetExceeded: more relabelings are tried than allowed.
    """

    grid, _ = _minimizers(square, resolve(budget))
    return LatinSquare(grid)


def autotopism_count(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    The number of isotopisms fixing the square, which equals the number of isotopisms onto its canonical form.
    """

    _, count = _minimizers(square, resolve(budget))
    return count


def class_size(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    The number of squares isotopic to `square`: (n!)^3 / |Atp|.
    """

    return math.factorial(square.n) ** 3 // autotopism_count(square, budget=budget)


def species_id(square: LatinSquare, *, budget: SearchBudget | None = None) -> LatinSquare:
    """
    The least canonical isotopy form over the six conjugates, shared by the whole species.
    """

    budget = resolve(budget)
    return min(canonical_isotopy_form(conjugate(square, conj), budget=budget) for conj in Conjugate)
