from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import TYPE_CHECKING

from latcov.core.entry import Entry, Line, LineKind
from latcov.exceptions import EntryNotInSquare

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


class EntrySet:
    """
    A set of entries of one Latin square.

    Membership is kept densely over the n*n cells (cell index r*n + c); the number of
    member entries on every row, column and symbol line is cached and updated on each
    insertion and deletion, so that cover and redundancy predicates are count lookups.
    Iteration yields entries in row-major order.
    """

    __slots__ = ("square", "n", "_member", "_cells", "rows", "cols", "syms")

    def __init__(self, square: LatinSquare, entries: Iterable[tuple[int, int, int]] = ()) -> None:
        self.square = square
        self.n = square.n
        self._member = bytearray(self.n * self.n)
        self._cells: set[int] = set()
        self.rows = [0] * self.n
        self.cols = [0] * self.n
        self.syms = [0] * self.n
        for entry in entries:
            self.add(entry)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, size={len(self)})"

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Entry]:
        n, grid = self.n, self.square.grid
        for cell in sorted(self._cells):
            r, c = divmod(cell, n)
            yield Entry(r, c, grid[r][c])

    def __contains__(self, entry: object) -> bool:
        if not isinstance(entry, tuple) or len(entry) != 3:
            return False
        r, c, s = entry
        return self.square.contains(entry) and bool(self._member[r * self.n + c])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EntrySet) and self.square == other.square and self._cells == other._cells

    def __hash__(self) -> int:
        return hash(frozenset(self._cells))

    @property
    def entries(self) -> tuple[Entry, ...]:
        return tuple(self)

    @property
    def cells(self) -> frozenset[int]:
        return frozenset(self._cells)

    def has_cell(self, r: int, c: int) -> bool:
        return bool(self._member[r * self.n + c])

    def add(self, entry: tuple[int, int, int]) -> None:
        if not self.square.contains(entry):
            raise EntryNotInSquare(entry)
        r, c, s = entry
        cell = r * self.n + c
        if self._member[cell]:
            return
        self._member[cell] = 1
        self._cells.add(cell)
        self.rows[r] += 1
        self.cols[c] += 1
        self.syms[s] += 1

    def discard(self, entry: tuple[int, int, int]) -> None:
        r, c, s = entry
        cell = r * self.n + c
        if not self._member[cell]:
            return
        self._member[cell] = 0
        self._cells.discard(cell)
        self.rows[r] -= 1
        self.cols[c] -= 1
        self.syms[s] -= 1

    def copy(self) -> EntrySet:
        clone = EntrySet.__new__(type(self))
        clone.square = self.square
        clone.n = self.n
        clone._member = bytearray(self._member)
        clone._cells = set(self._cells)
        clone.rows = list(self.rows)
        clone.cols = list(self.cols)
        clone.syms = list(self.syms)
        return clone

    def line_count(self, line: Line) -> int:
        counts = {LineKind.ROW: self.rows, LineKind.COLUMN: self.cols, LineKind.SYMBOL: self.syms}[line.kind]
        return counts[line.index]

    def counts(self, entry: tuple[int, int, int]) -> tuple[int, int, int]:
        """
        Return how many member entries share the row, the column and the symbol of `entry`.
        """

        r, c, s = entry
        return self.rows[r], self.cols[c], self.syms[s]

    def uncovered_lines(self) -> list[Line]:
        return [
            Line(kind, i)
            for kind, counts in ((LineKind.ROW, self.rows), (LineKind.COLUMN, self.cols), (LineKind.SYMBOL, self.syms))
            for i, k in enumerate(counts)
            if k == 0
        ]

    def represented_lines(self) -> int:
        return sum(1 for counts in (self.rows, self.cols, self.syms) for k in counts if k)

    def is_redundant(self, entry: tuple[int, int, int]) -> bool:
        r, c, s = entry
        return self.rows[r] >= 2 and self.cols[c] >= 2 and self.syms[s] >= 2

    def to_list(self) -> list[list[int]]:
        return [list(e) for e in self]
