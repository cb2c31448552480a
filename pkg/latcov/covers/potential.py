from __future__ import annotations

from collections.abc import Iterable, Iterator
from enum import StrEnum

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.core.isotopism import Conjugate
from latcov.covers.cover import unique_partition
from latcov.exceptions import NotAPotentialCover, NotMinimal, TooSmall
from latcov.logger import logger


class PotentialCover:
    """
    A partial Latin square of order n representing every row, column and symbol.

    Unlike a cover it need not complete to a Latin square.
    """

    __slots__ = ("n", "triples", "rows", "cols", "syms")

    def __init__(self, n: int, triples: Iterable[tuple[int, int, int]]) -> None:
        self.n = n
        self.triples = frozenset(Entry(*t) for t in triples)
        self.rows = [0] * n
        self.cols = [0] * n
        self.syms = [0] * n
        seen: set[tuple[int, int, int]] = set()
        for r, c, s in self.triples:
            if not all(0 <= x < n for x in (r, c, s)):
                raise NotAPotentialCover(f"entry {(r, c, s)} outside order {n}")
            for key in ((0, r, c), (1, r, s), (2, c, s)):
                if key in seen:
                    raise NotAPotentialCover(f"entry {(r, c, s)} clashes with another entry")
                seen.add(key)
            self.rows[r] += 1
            self.cols[c] += 1
            self.syms[s] += 1
        for name, counts in (("row", self.rows), ("column", self.cols), ("symbol", self.syms)):
            missing = [i for i, k in enumerate(counts) if not k]
            if missing:
                raise NotAPotentialCover(f"{name} {missing[0]} is not represented")

    def __repr__(self) -> str:
        return f"PotentialCover(n={self.n}, size={len(self)})"

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Entry]:
        return iter(sorted(self.triples))

    def __contains__(self, triple: object) -> bool:
        return triple in self.triples

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PotentialCover) and self.n == other.n and self.triples == other.triples

    def __hash__(self) -> int:
        return hash((self.n, self.triples))

    @classmethod
    def from_entry_set(cls, entries: EntrySet) -> PotentialCover:
        return cls(entries.n, entries)

    def is_redundant(self, e: tuple[int, int, int]) -> bool:
        r, c, s = e
        return self.rows[r] >= 2 and self.cols[c] >= 2 and self.syms[s] >= 2

    def redundant(self) -> tuple[Entry, ...]:
        return tuple(e for e in self if self.is_redundant(e))

    def is_minimal(self) -> bool:
        return not any(self.is_redundant(e) for e in self.triples)

    def conjugate(self, conj: Conjugate) -> PotentialCover:
        return PotentialCover(self.n, (conj.apply(e) for e in self.triples))

    def replace(self, removed: Iterable[tuple[int, int, int]], added: Iterable[tuple[int, int, int]]) -> PotentialCover:
        return PotentialCover(self.n, (self.triples - set(removed)) | set(added))

    def stripped(self) -> PotentialCover:
        """
        Delete redundant entries in ascending order until none is left.
        """

        rows, cols, syms = list(self.rows), list(self.cols), list(self.syms)
        kept = []
        for r, c, s in sorted(self.triples):
            if rows[r] >= 2 and cols[c] >= 2 and syms[s] >= 2:
                rows[r] -= 1
                cols[c] -= 1
                syms[s] -= 1
            else:
                kept.append((r, c, s))
        return PotentialCover(self.n, kept)


class NormalizeOutcome(StrEnum):
    NORMALIZED = "Normalized"
    GREW = "Grew"


def _line_with(cover: PotentialCover, counts: list[int], avoid: int, ok=lambda i: True) -> int | None:
    return next((i for i in range(cover.n) if i != avoid and counts[i] >= 2 and ok(i)), None)


def _expand_unique(cover: PotentialCover, e: Entry) -> PotentialCover:
    """
    Replace an entry representing its row, column and symbol uniquely by two entries.
    """

    r, c, s = e
    r2 = _line_with(cover, cover.rows, r)
    c2 = _line_with(cover, cover.cols, c)
    return cover.replace([e], [(r2, c, s), (r, c2, s)])


def _switch(cover: PotentialCover) -> tuple[PotentialCover, NormalizeOutcome] | None:
    """
    One step on an entry of U_S and an entry of U_RC; None when one of them is empty.
    """

    part = unique_partition(cover)
    if not part.US or not part.URC:
        return None
    e0, e1 = part.US[0], part.URC[0]
    r0, c0, s0 = e0
    r1, c1, s1 = e1
    rows_with_s1 = {r for r, _, s in cover.triples if s == s1}
    cols_with_s1 = {c for _, c, s in cover.triples if s == s1}

    if r0 not in rows_with_s1 and c0 not in cols_with_s1:
        grown = cover.replace([e1], [(r0, c1, s1), (r1, c0, s1)])
        return grown.stripped(), NormalizeOutcome.GREW

    if cover.syms[s1] == 2:
        if r0 not in rows_with_s1:
            c2 = _line_with(cover, cover.cols, c0, lambda j: j not in cols_with_s1)
            grown = cover.replace([e1], [(r0, c1, s1), (r1, c2, s1)])
        else:
            r2 = _line_with(cover, cover.rows, r0, lambda i: i not in rows_with_s1)
            grown = cover.replace([e1], [(r1, c0, s1), (r2, c1, s1)])
        return grown.stripped(), NormalizeOutcome.GREW

    return cover.replace([e0, e1], [(r0, c1, s0), (r1, c0, s0)]), NormalizeOutcome.NORMALIZED


# Conjugates bringing U_R/U_CS and U_C/U_RS into the U_S/U_RC position (all involutions)
_PAIRS = (Conjugate.RCS, Conjugate.SCR, Conjugate.RSC)


def normalize_potential_cover(cover: PotentialCover) -> tuple[PotentialCover, NormalizeOutcome]:
    """
    Switch a minimal potential cover of size at least 2n towards U_RC = U_RS = U_CS = U_RCS = {}.

    An entry of U_RCS, or a pair from U_S x U_RC (or a conjugate pair) whose symbol
    allows it, yields a strictly larger minimal potential cover, returned as `Grew`.
    Otherwise same-size switches are applied until one set of each pair U_S/U_RC,
    U_R/U_CS, U_C/U_RS is empty, which for a cover of size at least 2n forces all of
    U_RC, U_RS, U_CS to be empty; the result is returned as `Normalized`.

    Raises:
        NotMinimal: the potential cover has a redundant entry.
        TooSmall: the potential cover has fewer than 2n entries.
    """

    n = cover.n
    if not cover.is_minimal():
        raise NotMinimal(len(cover))
    if len(cover) < 2 * n:
        raise TooSmall(len(cover), 2 * n)

    switches = 0
    while True:
        part = unique_partition(cover)
        if part.URCS:
            logger.debug(f"Expanding the uniquely represented entry {part.URCS[0]}")
            return _expand_unique(cover, part.URCS[0]), NormalizeOutcome.GREW
        for conj in _PAIRS:
            step = _switch(cover.conjugate(conj))
            if step is None:
                continue
            moved, outcome = step
            cover = moved.conjugate(conj.inverse)
            if outcome is NormalizeOutcome.GREW:
                return cover, outcome
            switches += 1
            break
        else:
            logger.debug(f"Potential cover normalized after {switches} switches")
            return cover, NormalizeOutcome.NORMALIZED
