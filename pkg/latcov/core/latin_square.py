from __future__ import annotations

from collections.abc import Iterator
from typing import TYPE_CHECKING

import numpy as np

from latcov.core.entry import Entry
from latcov.exceptions import ColRepeat, NotSquare, RowRepeat, SymbolOutOfRange

if TYPE_CHECKING:
    from latcov.typings import Grid, GridLike


class LatinSquare:
    """
    An immutable Latin square of order n on the symbols {0, ..., n-1}.

    The constructor trusts its input: squares built from untrusted data go through `validate`.
    Alongside the grid the square keeps the two inverse lookups every search needs:
    the column holding a symbol in a row and the row holding a symbol in a column.
    """

    __slots__ = ("n", "grid", "_col_of", "_row_of", "_array")

    def __init__(self, grid: Grid) -> None:
        self.n = len(grid)
        self.grid = grid
        col_of = [[0] * self.n for _ in range(self.n)]
        row_of = [[0] * self.n for _ in range(self.n)]
        for r, row in enumerate(grid):
            for c, s in enumerate(row):
                col_of[r][s] = c
                row_of[c][s] = r
        self._col_of = tuple(tuple(x) for x in col_of)
        self._row_of = tuple(tuple(x) for x in row_of)
        self._array: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"LatinSquare(n={self.n})"

    def __str__(self) -> str:
        width = len(str(self.n - 1))
        return "\n".join(" ".join(f"{s:>{width}}" for s in row) for row in self.grid)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LatinSquare) and self.grid == other.grid

    def __lt__(self, other: LatinSquare) -> bool:
        return (self.n, self.grid) < (other.n, other.grid)

    def __hash__(self) -> int:
        return hash(self.grid)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        r, c = cell
        return self.grid[r][c]

    def entry(self, r: int, c: int) -> Entry:
        return Entry(r, c, self.grid[r][c])

    def entries(self) -> Iterator[Entry]:
        """
        Iterate over E(L) in row-major order.
        """

        for r, row in enumerate(self.grid):
            for c, s in enumerate(row):
                yield Entry(r, c, s)

    def col_of(self, r: int, s: int) -> int:
        """
        Return the column where row r holds symbol s.
        """

        return self._col_of[r][s]

    def row_of(self, c: int, s: int) -> int:
        """
        Return the row where column c holds symbol s.
        """

        return self._row_of[c][s]

    def entry_with(self, *, row: int | None = None, col: int | None = None, sym: int | None = None) -> Entry:
        """
        Return the unique entry fixed by two of its three coordinates.
        """

        if row is not None and col is not None:
            return self.entry(row, col)
        if row is not None and sym is not None:
            return Entry(row, self._col_of[row][sym], sym)
        if col is not None and sym is not None:
            return Entry(self._row_of[col][sym], col, sym)
        raise ValueError("Two of row, col and sym are required")

    def contains(self, entry: tuple[int, int, int]) -> bool:
        r, c, s = entry
        return 0 <= r < self.n and 0 <= c < self.n and self.grid[r][c] == s

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(s for row in self.grid for s in row)

    @property
    def array(self) -> np.ndarray:
        # Lazy initialization
        if self._array is None:
            self._array = np.array(self.grid, dtype=np.int64).reshape(self.n, self.n)
            self._array.setflags(write=False)
        return self._array

    @property
    def is_idempotent(self) -> bool:
        return all(self.grid[i][i] == i for i in range(self.n))

    @property
    def is_symmetric(self) -> bool:
        return all(self.grid[r][c] == self.grid[c][r] for r in range(self.n) for c in range(r))

    @classmethod
    def from_array(cls, array: np.ndarray) -> LatinSquare:
        return cls(tuple(tuple(int(x) for x in row) for row in array))


def validate(grid: GridLike | np.ndarray) -> LatinSquare:
    """
    Check that `grid` is a Latin square on {0, ..., n-1} and return it as a LatinSquare.

    Raises:
        NotSquare: a row length differs from the number of rows (or the grid is empty).
        SymbolOutOfRange: a cell holds a non-integer or a value outside {0, ..., n-1}.
        RowRepeat: a symbol appears twice in a row.
        ColRepeat: a symbol appears twice in a column.
    """

    rows = [list(row) for row in grid]
    n = len(rows)
    if n == 0:
        raise NotSquare(0, 0, 0)
    for r, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(n, r, len(row))

    cleaned: list[tuple[int, ...]] = []
    for r, row in enumerate(rows):
        values = []
        for c, s in enumerate(row):
            if isinstance(s, bool) or not isinstance(s, int | np.integer) or not 0 <= s < n:
                raise SymbolOutOfRange(r, c, s)
            values.append(int(s))
        cleaned.append(tuple(values))

    for r, row in enumerate(cleaned):
        seen = set()
        for s in row:
            if s in seen:
                raise RowRepeat(r, s)
            seen.add(s)

    for c in range(n):
        seen = set()
        for r in range(n):
            s = cleaned[r][c]
            if s in seen:
                raise ColRepeat(c, s)
            seen.add(s)

    return LatinSquare(tuple(cleaned))


def cyclic_square(n: int) -> LatinSquare:
    """
    Return the Cayley table of Z_n.
    """

    return LatinSquare(tuple(tuple((r + c) % n for c in range(n)) for r in range(n)))


def turn_intercalate(square: LatinSquare, r1: int, r2: int, c1: int, c2: int) -> LatinSquare:
    """
    Swap the two symbols of the intercalate occupying rows {r1, r2} and columns {c1, c2}.

    Raises:
        NotAnIntercalate: the four cells do not hold two symbols arranged as a 2x2 subsquare.
    """

    from latcov.exceptions import NotAnIntercalate

    g = square.grid
    a, b = g[r1][c1], g[r1][c2]
    if r1 == r2 or c1 == c2 or a == b or g[r2][c2] != a or g[r2][c1] != b:
        raise NotAnIntercalate((r1, r2), (c1, c2))

    rows = [list(row) for row in g]
    rows[r1][c1], rows[r1][c2] = b, a
    rows[r2][c1], rows[r2][c2] = a, b
    return LatinSquare(tuple(tuple(row) for row in rows))


def count_intercalates(square: LatinSquare) -> int:
    """
    Count the 2x2 Latin subsquares of the square.
    """

    n, g = square.n, square.grid
    total = 0
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            row1, row2 = g[r1], g[r2]
            for c1 in range(n):
                c2 = square.col_of(r1, row2[c1])
                if c2 > c1 and row2[c2] == row1[c1]:
                    total += 1
    return total
