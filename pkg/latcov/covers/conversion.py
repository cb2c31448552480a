from __future__ import annotations

from typing import TYPE_CHECKING

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.covers.cover import Cover, is_cover
from latcov.exceptions import ForcedEntryNotInCover, NotACover, OrderTooSmall
from latcov.transversals import PartialTransversal

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


def _pad(square: LatinSquare, entries: EntrySet, size: int, symbol: int | None = None) -> None:
    """
    Add the lexicographically least new entries (with the given symbol, when set) until `size` is reached.
    """

    for e in square.entries():
        if len(entries) >= size:
            return
        if (symbol is None or e.sym == symbol) and e not in entries:
            entries.add(e)


def pt_to_cover(square: LatinSquare, pt: PartialTransversal) -> Cover:
    """
    Extend a partial transversal of deficit d to a cover of size n + ceil(d/2).

    The unrepresented rows r1 < r2 < ..., columns c1 < c2 < ... and symbols s1 < s2 < ...
    are paired off: each pair adds (r1, c1, .), (r2, ., s1) and (., c2, s2). An odd
    deficit leaves (rd, cd, .) and an entry holding sd. When the partial transversal is
    not maximal the pairing may cover lines twice, and the least new entries pad the
    cover to its size.

    Raises:
        OrderTooSmall: n < 2.
    """

    n = square.n
    if n < 2:
        raise OrderTooSmall(n, 2)
    rows, cols, syms = pt.free_rows, pt.free_cols, pt.free_syms
    d = pt.deficit
    target = n + (d + 1) // 2

    out = EntrySet(square, pt)
    for i in range(0, d - 1, 2):
        out.add(square.entry(rows[i], cols[i]))
        out.add(square.entry_with(row=rows[i + 1], sym=syms[i]))
        out.add(square.entry_with(col=cols[i + 1], sym=syms[i + 1]))
    if d % 2:
        out.add(square.entry(rows[-1], cols[-1]))
        if not out.syms[syms[-1]]:
            _pad(square, out, len(out) + 1, symbol=syms[-1])
    _pad(square, out, target)
    return Cover.from_entry_set(out)


def cover_to_pt(square: LatinSquare, cover: EntrySet, forced: tuple[int, int, int] | None = None) -> PartialTransversal:
    """
    Extract a partial transversal of deficit exactly 2a from a cover of size n + a.

    One representative entry is chosen per row, then per column preferring entries
    already chosen, then per symbol preferring entries chosen twice; the entries
    chosen three times form a partial transversal of deficit at most 2a, which is
    trimmed from the end. A forced entry is chosen first on each of its lines, so
    it always survives.

    Raises:
        NotACover: the entry set leaves a line unrepresented.
        ForcedEntryNotInCover: the forced entry does not belong to the cover.
    """

    n = square.n
    if not is_cover(cover):
        raise NotACover(len(cover))
    if forced is not None:
        forced = Entry(*forced)
        if forced not in cover:
            raise ForcedEntryNotInCover(forced)

    votes: dict[Entry, int] = {}
    for axis in range(3):
        picked: dict[int, Entry] = {}
        if forced is not None:
            picked[forced[axis]] = forced
        for e in sorted(cover, key=lambda e: -votes.get(e, 0)):
            picked.setdefault(e[axis], e)
        for e in picked.values():
            votes[e] = votes.get(e, 0) + 1

    chosen = sorted(e for e, k in votes.items() if k == 3)
    a = len(cover) - n
    keep = max(n - 2 * a, 0)
    if forced is not None:
        rest = [e for e in chosen if e != forced][: max(keep - 1, 0)]
        chosen = sorted([forced, *rest])
    else:
        chosen = chosen[:keep]
    return PartialTransversal(square, chosen)
