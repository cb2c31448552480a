from __future__ import annotations

from latcov.exceptions.base import LatcovError


class NotSquare(LatcovError):
    exit_code = 2

    def __init__(self, rows: int, bad_row: int, length: int):
        self.rows = rows
        self.bad_row = bad_row
        self.length = length
        super().__init__(f"Grid with {rows} rows has a row {bad_row} of length {length}")


class SymbolOutOfRange(LatcovError):
    exit_code = 2

    def __init__(self, row: int, col: int, symbol: object):
        self.row = row
        self.col = col
        self.symbol = symbol
        super().__init__(f"Cell ({row}, {col}) holds {symbol!r}, outside the symbol range")


class RowRepeat(LatcovError):
    exit_code = 2

    def __init__(self, row: int, symbol: int):
        self.row = row
        self.symbol = symbol
        super().__init__(f"Symbol {symbol} repeated in row {row}")


class ColRepeat(LatcovError):
    exit_code = 2

    def __init__(self, col: int, symbol: int):
        self.col = col
        self.symbol = symbol
        super().__init__(f"Symbol {symbol} repeated in column {col}")


class DegreeMismatch(LatcovError):
    def __init__(self, expected: int, found: int):
        self.expected = expected
        self.found = found
        super().__init__(f"Permutation of degree {found} applied to an object of order {expected}")


class NotAnIntercalate(LatcovError):
    def __init__(self, rows: tuple[int, int], cols: tuple[int, int]):
        self.rows = rows
        self.cols = cols
        super().__init__(f"Cells at rows {rows} and columns {cols} do not form an intercalate")


class EntryNotInSquare(LatcovError):
    def __init__(self, entry: tuple[int, int, int]):
        self.entry = entry
        super().__init__(f"Entry {tuple(entry)} does not belong to the square")


class FormatError(LatcovError):
    """Raised when a file cannot be parsed."""

    exit_code = 2

    def __init__(self, source: str, reason: str):
        self.source = source
        self.reason = reason
        super().__init__(f"{source}: {reason}")
