from __future__ import annotations

from typing import TYPE_CHECKING

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.covers.cover import Cover, cross_cover, is_cover
from latcov.exceptions import RedundantEntryPresent
from latcov.logger import logger

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


def _drop_new_redundancy(entries: EntrySet, added: Entry) -> None:
    """
    Delete the entry (there is at most one) made redundant by adding `added`.
    """

    square = entries.square
    r, c, s = added
    n = entries.n
    neighbours = (
        [square.entry(r, j) for j in range(n)]
        + [square.entry(i, c) for i in range(n)]
        + [square.entry_with(row=i, sym=s) for i in range(n)]
    )
    for e in neighbours:
        if e != added and e in entries and entries.is_redundant(e):
            entries.discard(e)
            return


def extend_partial_minimal_cover(square: LatinSquare, partial: EntrySet) -> Cover:
    """
    Grow a redundancy-free entry set into a minimal cover at least as large.

    Sets of at most 2n-1 entries are answered with a cross cover. Otherwise every
    unrepresented line is represented in turn by the entry where it meets a line
    represented at least twice (one always exists while the set has 2n entries or more),
    after which the single entry the addition may have made redundant is deleted.
    The size never decreases and the number of represented lines strictly grows.

    Raises:
        RedundantEntryPresent: the input contains a redundant entry.
    """

    n = square.n
    for e in partial:
        if partial.is_redundant(e):
            raise RedundantEntryPresent(e)
    if is_cover(partial):
        return Cover.from_entry_set(partial)
    if len(partial) <= 2 * n - 1:
        r, c, _ = next(iter(partial), Entry(0, 0, square[0, 0]))
        return cross_cover(square, r, c)

    work = partial.copy()
    steps = 0
    while True:
        r = next((i for i in range(n) if not work.rows[i]), None)
        if r is not None:
            c = next(j for j in range(n) if work.cols[j] >= 2)
            added = square.entry(r, c)
        else:
            c = next((j for j in range(n) if not work.cols[j]), None)
            if c is not None:
                r = next(i for i in range(n) if work.rows[i] >= 2)
                added = square.entry(r, c)
            else:
                s = next((k for k in range(n) if not work.syms[k]), None)
                if s is None:
                    break
                r = next(i for i in range(n) if work.rows[i] >= 2)
                added = square.entry_with(row=r, sym=s)
        work.add(added)
        _drop_new_redundancy(work, added)
        steps += 1

    logger.debug(f"Extended a partial minimal cover of size {len(partial)} to {len(work)} in {steps} steps")
    return Cover.from_entry_set(work)
