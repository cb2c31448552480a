from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np

from latcov.core.entry import Entry
from latcov.core.latin_square import LatinSquare
from latcov.exceptions import DegreeMismatch

if TYPE_CHECKING:
    from latcov.typings import Permutation, Triple

_ROLE = {"R": 0, "C": 1, "S": 2}


class Conjugate(StrEnum):
    """
    The six conjugates of a Latin square.

    Each value names, position by position, which coordinate of the original triple
    becomes the new row, column and symbol: CRS maps (r, c, s) to (c, r, s), the transpose.
    """

    RCS = "RCS"
    CRS = "CRS"
    RSC = "RSC"
    SCR = "SCR"
    CSR = "CSR"
    SRC = "SRC"

    @property
    def positions(self) -> tuple[int, int, int]:
        return _ROLE[self.value[0]], _ROLE[self.value[1]], _ROLE[self.value[2]]

    def apply(self, triple: Triple) -> Entry:
        i, j, k = self.positions
        return Entry(triple[i], triple[j], triple[k])

    @property
    def inverse(self) -> Conjugate:
        positions = self.positions
        inverse = [0, 0, 0]
        for new, old in enumerate(positions):
            inverse[old] = new
        return Conjugate("".join("RCS"[p] for p in inverse))

    @property
    def is_involution(self) -> bool:
        return self.inverse is self


@dataclass(frozen=True, slots=True)
class Isotopism:
    """
    Independent permutations of rows, columns and symbols.

    Each component maps an old index to its new index, so the image square N of L
    satisfies N[rows[r]][cols[c]] = syms[L[r][c]].
    """

    rows: Permutation
    cols: Permutation
    syms: Permutation

    def __post_init__(self) -> None:
        n = len(self.rows)
        for perm in (self.cols, self.syms):
            if len(perm) != n:
                raise DegreeMismatch(n, len(perm))
        for perm in (self.rows, self.cols, self.syms):
            if sorted(perm) != list(range(n)):
                raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")

    @property
    def degree(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> Isotopism:
        perm = tuple(range(n))
        return cls(perm, perm, perm)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> Isotopism:
        return cls(*(tuple(int(x) for x in rng.permutation(n)) for _ in range(3)))

    def inverse(self) -> Isotopism:
        return Isotopism(*(tuple(int(x) for x in np.argsort(perm)) for perm in (self.rows, self.cols, self.syms)))

    def then(self, other: Isotopism) -> Isotopism:
        """
        Return the isotopism applying `self` first and `other` second.
        """

        if other.degree != self.degree:
            raise DegreeMismatch(self.degree, other.degree)
        return Isotopism(
            tuple(other.rows[i] for i in self.rows),
            tuple(other.cols[i] for i in self.cols),
            tuple(other.syms[i] for i in self.syms),
        )

    def apply_entry(self, triple: Triple) -> Entry:
        r, c, s = triple
        return Entry(self.rows[r], self.cols[c], self.syms[s])

    def apply(self, square: LatinSquare) -> LatinSquare:
        if square.n != self.degree:
            raise DegreeMismatch(square.n, self.degree)
        out = np.empty((square.n, square.n), dtype=np.int64)
        out[np.ix_(self.rows, self.cols)] = np.asarray(self.syms, dtype=np.int64)[square.array]
        return LatinSquare.from_array(out)


def conjugate(square: LatinSquare, conj: Conjugate) -> LatinSquare:
    if conj is Conjugate.RCS:
        return square
    n = square.n
    out = np.empty((n, n), dtype=np.int64)
    for entry in square.entries():
        r, c, s = conj.apply(entry)
        out[r, c] = s
    return LatinSquare.from_array(out)


def transform(square: LatinSquare, iso: Isotopism, conj: Conjugate = Conjugate.RCS) -> LatinSquare:
    """
    Apply an isotopism and then a conjugate.

    The inverse is `transform(transform(image, identity, conj.inverse), iso.inverse())`.

    Raises:
        DegreeMismatch: the isotopism degree differs from the square's order.
    """

    return conjugate(iso.apply(square), conj)
