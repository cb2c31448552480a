from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import TYPE_CHECKING

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.core.isotopism import Isotopism
from latcov.covers.cover import Cover, is_minimal_cover
from latcov.covers.enumeration import enumerate_covers
from latcov.exceptions import EntryNotInSquare, NotATransversal, NotFound, OrderTooSmall
from latcov.logger import logger
from latcov.transversals.partial_transversal import is_partial_transversal
from latcov.transversals.search import transversal_through
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare

_SEARCH_MAX_ORDER = 6


def _diagonalizer(transversal: Iterable[tuple[int, int, int]], first: tuple[int, int, int] | None = None) -> Isotopism:
    """
    The isotopism sending the k-th entry of the transversal to (k, k, k), `first` to (0, 0, 0).
    """

    ordered = sorted(transversal, key=lambda e: (tuple(e) != tuple(first or ()), tuple(e)))
    rows, cols, syms = [0] * len(ordered), [0] * len(ordered), [0] * len(ordered)
    for k, (r, c, s) in enumerate(ordered):
        rows[r], cols[c], syms[s] = k, k, k
    return Isotopism(tuple(rows), tuple(cols), tuple(syms))


def _swap(square: LatinSquare, a: int, b: int) -> list[Entry]:
    """
    Replace the diagonal entries (a, a, a) and (b, b, b) of a diagonal transversal by three
    entries: (a, b, L[a][b]), the b in column a and the a in row b.
    """

    n = square.n
    keep = [Entry(i, i, i) for i in range(n) if i not in (a, b)]
    return keep + [
        square.entry(a, b),
        Entry(b, square.col_of(b, a), a),
        Entry(square.row_of(a, b), a, b),
    ]


def _patch(square: LatinSquare, i: int, j: int, k: int, l: int) -> list[Entry]:
    n = square.n
    dropped = {1, i, j, k, l}
    keep = [Entry(x, x, x) for x in range(n) if x not in dropped]
    return keep + [Entry(1, i, j), Entry(1, k, l), Entry(i, j, 1), Entry(j, 1, i), Entry(k, l, 1), Entry(l, 1, k)]


def _through_diagonal_origin(square: LatinSquare) -> Iterator[list[Entry]]:
    """
    Candidate (n+1)-covers of a square with diagonal transversal, all containing (0, 0, 0).
    """

    n, grid = square.n, square.grid
    for i in range(2, n):
        j = grid[1][i]
        if j == 0:
            continue
        yield _swap(square, 1, i)
        for k in range(2, n):
            if k in (i, j):
                continue
            l = grid[1][k]
            if l in (0, i):
                continue
            yield _swap(square, 1, k)
            yield _patch(square, i, j, k, l)


def _accept(square: LatinSquare, entries: list[Entry], target: Entry) -> EntrySet | None:
    n = square.n
    if target not in entries or len(set(entries)) != n + 1:
        return None
    if not all(square.contains(e) for e in entries):
        return None
    candidate = EntrySet(square, entries)
    return candidate if is_minimal_cover(candidate) else None


def _search(square: LatinSquare, entry: Entry, budget: SearchBudget) -> Cover:
    for cover in enumerate_covers(square, square.n + 1, base=[entry], budget=budget):
        if cover.is_minimal:
            return cover
    raise NotFound(f"minimal (n+1)-cover through {tuple(entry)}")


def minimal_np1_through_entry(
    square: LatinSquare,
    transversal: Iterable[tuple[int, int, int]],
    entry: tuple[int, int, int],
    *,
    budget: SearchBudget | None = None,
) -> Cover:
    """
    Return a minimal (n+1)-cover of the square containing `entry`.

    Orders 5 and 6 are settled by search. For larger orders the transversal is moved onto
    the main diagonal and candidate covers are tried in order, the first minimal one
    containing the entry being returned:

    - if no transversal contains the entry (a, b, c), the single candidate swaps the
      diagonal entries of a and b for (a, b, c), the a in row b and the b in column a;
    - otherwise the square is re-diagonalized along a transversal through the entry, which
      then sits at (0, 0, 0). For each column i of row 1 with j = L[1][i] != 0, the swap
      of 1 and i is tried, then for each further column k with l = L[1][k] the swap of 1
      and k and the six-entry patch on the symbols 1, i, j, k, l.

    Every candidate is checked for minimality. When none passes, a warning is logged and
    an exhaustive search through the entry is run instead.

    Raises:
        OrderTooSmall: the order is below 5.
        NotATransversal: `transversal` is not a transversal of the square.
        EntryNotInSquare: `entry` does not belong to the square.
    """

    n = square.n
    if n < 5:
        raise OrderTooSmall(n, 5)
    diagonal = EntrySet(square, transversal)
    if len(diagonal) != n or not is_partial_transversal(diagonal):
        raise NotATransversal(len(diagonal))
    if not square.contains(entry):
        raise EntryNotInSquare(entry)
    entry = Entry(*entry)
    budget = resolve(budget)

    if n <= _SEARCH_MAX_ORDER:
        return _search(square, entry, budget)

    iso = _diagonalizer(diagonal, entry if entry in diagonal else None)
    normal = iso.apply(square)
    target = iso.apply_entry(entry)
    through = transversal_through(normal, target, budget=budget)

    if through is None:
        a, b, _ = target
        candidates: Iterable[list[Entry]] = [_swap(normal, a, b)]
    else:
        second = _diagonalizer(through, target)
        iso = iso.then(second)
        normal = second.apply(normal)
        target = second.apply_entry(target)
        candidates = _through_diagonal_origin(normal)

    back = iso.inverse()
    for entries in candidates:
        found = _accept(normal, entries, target)
        if found is not None:
            return Cover(square, (back.apply_entry(e) for e in found))

    logger.warning(f"No constructed minimal (n+1)-cover through {tuple(entry)}; falling back to search")
    return _search(square, entry, budget)
