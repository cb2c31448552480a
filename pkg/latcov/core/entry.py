from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple


class LineKind(StrEnum):
    """
    The three kinds of line of a Latin square.
    """

    ROW = "ROW"
    COLUMN = "COLUMN"
    SYMBOL = "SYMBOL"


@dataclass(frozen=True, slots=True, order=True)
class Line:
    kind: LineKind
    index: int

    def __repr__(self) -> str:
        return f"{self.kind.lower()} {self.index}"


class Entry(NamedTuple):
    """
    A filled cell of a square as the triple (row, col, sym).
    """

    row: int
    col: int
    sym: int

    def lines(self) -> tuple[Line, Line, Line]:
        return Line(LineKind.ROW, self.row), Line(LineKind.COLUMN, self.col), Line(LineKind.SYMBOL, self.sym)


def all_lines(n: int) -> Iterator[Line]:
    """
    Iterate over the 3n lines of an order-n square: rows, then columns, then symbols.
    """

    for kind in LineKind:
        for index in range(n):
            yield Line(kind, index)
