from __future__ import annotations

from collections.abc import Iterator
from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from latcov.core.entry import Entry


class CountedEntries(Protocol):
    """
    A set of (row, col, sym) triples with per-line representation counts.
    """

    n: int
    rows: list[int]
    cols: list[int]
    syms: list[int]

    def __iter__(self) -> Iterator[Entry]:
        ...

    def __len__(self) -> int:
        ...
