from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

from latcov.core.entry_set import EntrySet
from latcov.exceptions import NotAPartialTransversal

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


def is_partial_transversal(entries: EntrySet) -> bool:
    return all(k <= 1 for counts in (entries.rows, entries.cols, entries.syms) for k in counts)


class PartialTransversal(EntrySet):
    """
    An entry set representing every line at most once.

    Its deficit is the number of rows (equivalently columns, symbols) it leaves unrepresented.
    """

    __slots__ = ()

    def __init__(self, square: LatinSquare, entries: Iterable[tuple[int, int, int]] = ()) -> None:
        super().__init__(square, entries)
        if not is_partial_transversal(self):
            raise NotAPartialTransversal(tuple(self))

    @classmethod
    def from_entry_set(cls, entries: EntrySet) -> PartialTransversal:
        return cls(entries.square, entries)

    @property
    def deficit(self) -> int:
        return self.n - len(self)

    @property
    def free_rows(self) -> list[int]:
        return [i for i, k in enumerate(self.rows) if not k]

    @property
    def free_cols(self) -> list[int]:
        return [i for i, k in enumerate(self.cols) if not k]

    @property
    def free_syms(self) -> list[int]:
        return [i for i, k in enumerate(self.syms) if not k]

    def extensions(self) -> list[tuple[int, int, int]]:
        """
        The entries that can be added while keeping a partial transversal.
        """

        square = self.square
        free_cols = set(self.free_cols)
        return sorted(
            (r, square.col_of(r, s), s)
            for r in self.free_rows
            for s in self.free_syms
            if square.col_of(r, s) in free_cols
        )

    def is_maximal(self) -> bool:
        square = self.square
        free_cols = set(self.free_cols)
        free_syms = self.free_syms
        return not any(square.col_of(r, s) in free_cols for r in self.free_rows for s in free_syms)

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.n,
            "deficit": self.deficit,
            "entries": self.to_list(),
            "maximal": self.is_maximal(),
        }


def is_maximal(square: LatinSquare, entries: Iterable[tuple[int, int, int]]) -> bool:
    """
    Tell whether no entry of the square can be added to the partial transversal.

    Raises:
        NotAPartialTransversal: the entries share a line.
    """

    return PartialTransversal(square, entries).is_maximal()
