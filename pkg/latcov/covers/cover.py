from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.exceptions import NotACover, RedundantEntryPresent

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare
    from latcov.protocols import CountedEntries


def is_cover(entries: CountedEntries) -> bool:
    return all(k for counts in (entries.rows, entries.cols, entries.syms) for k in counts)


def redundant_entries(entries: EntrySet) -> EntrySet:
    """
    The entries whose row, column and symbol are each represented at least twice.
    """

    return EntrySet(entries.square, [e for e in entries if entries.is_redundant(e)])


def is_minimal_cover(entries: EntrySet) -> bool:
    return is_cover(entries) and not any(entries.is_redundant(e) for e in entries)


def strip_redundancies(entries: EntrySet) -> EntrySet:
    """
    Repeatedly delete the lowest redundant entry until none is left.

    Deleting an entry never makes another entry redundant, so a single ascending
    sweep deletes exactly the entries the repeated rule would.
    """

    out = entries.copy()
    for e in entries:
        if out.is_redundant(e):
            out.discard(e)
    return out


class Cover(EntrySet):
    """
    An entry set representing every row, column and symbol.
    """

    __slots__ = ()

    def __init__(self, square: LatinSquare, entries: Iterable[tuple[int, int, int]] = ()) -> None:
        super().__init__(square, entries)
        if not is_cover(self):
            raise NotACover(len(self))

    @classmethod
    def from_entry_set(cls, entries: EntrySet) -> Cover:
        return cls(entries.square, entries)

    @property
    def excess(self) -> int:
        return len(self) - self.n

    @property
    def is_minimal(self) -> bool:
        return is_minimal_cover(self)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "order": self.n,
            "size": len(self),
            "entries": self.to_list(),
            "minimal": self.is_minimal,
        }
        if out["minimal"]:
            out["partition"] = unique_partition(self).to_dict()
        return out


@dataclass(frozen=True, slots=True)
class UniquePartition:
    """
    Split of a redundancy-free entry set by the lines each entry uniquely represents.
    """

    UR: tuple[Entry, ...]
    UC: tuple[Entry, ...]
    US: tuple[Entry, ...]
    URC: tuple[Entry, ...]
    URS: tuple[Entry, ...]
    UCS: tuple[Entry, ...]
    URCS: tuple[Entry, ...]

    def __len__(self) -> int:
        return sum(len(part) for part in self.parts().values())

    def parts(self) -> dict[str, tuple[Entry, ...]]:
        return {
            "UR": self.UR,
            "UC": self.UC,
            "US": self.US,
            "URC": self.URC,
            "URS": self.URS,
            "UCS": self.UCS,
            "URCS": self.URCS,
        }

    def sizes(self) -> dict[str, int]:
        return {name: len(part) for name, part in self.parts().items()}

    def to_dict(self) -> dict[str, list[list[int]]]:
        return {name: [list(e) for e in part] for name, part in self.parts().items()}


def unique_partition(entries: CountedEntries) -> UniquePartition:
    """
    Compute U_R, U_C, U_S, U_RC, U_RS, U_CS and U_RCS.

    Raises:
        RedundantEntryPresent: an entry uniquely represents none of its lines.
    """

    parts: dict[str, list[Entry]] = {key: [] for key in ("UR", "UC", "US", "URC", "URS", "UCS", "URCS")}
    for e in sorted(entries):
        r, c, s = e
        key = "U"
        key += "R" if entries.rows[r] == 1 else ""
        key += "C" if entries.cols[c] == 1 else ""
        key += "S" if entries.syms[s] == 1 else ""
        if key == "U":
            raise RedundantEntryPresent(e)
        parts[key].append(Entry(*e))
    return UniquePartition(**{key: tuple(value) for key, value in parts.items()})


def cross_cover(square: LatinSquare, r: int, c: int) -> Cover:
    """
    The minimal (2n-1)-cover made of all entries in row r or column c.
    """

    n = square.n
    return Cover(square, [square.entry(r, j) for j in range(n)] + [square.entry(i, c) for i in range(n) if i != r])
