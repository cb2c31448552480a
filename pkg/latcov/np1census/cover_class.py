from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from collections.abc import Iterable
from enum import StrEnum
from typing import TYPE_CHECKING

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.covers.cover import is_cover
from latcov.exceptions import NotACover, UnexpectedGraph, WrongSize

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


class CoverClass(StrEnum):
    """
    The five graphs an (n+1)-cover can induce on its entries.

    Two entries are adjacent when they share a row, column or symbol. Each line
    kind has exactly one doubly represented line, so the graph always has three edges:

    - G1: three disjoint edges
    - G2: a path on three vertices and a disjoint edge
    - G3: a path on four vertices
    - G4: a star with three leaves
    - G5: a triangle
    """

    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"
    G5 = "G5"


_BY_DEGREES = {
    (1, 1, 1, 1, 1, 1): CoverClass.G1,
    (2, 1, 1, 1, 1): CoverClass.G2,
    (2, 2, 1, 1): CoverClass.G3,
    (3, 1, 1, 1): CoverClass.G4,
    (2, 2, 2): CoverClass.G5,
}


def _edges(entries: Iterable[tuple[int, int, int]]) -> list[tuple[Entry, Entry]]:
    lines: dict[tuple[int, int], list[Entry]] = defaultdict(list)
    for e in entries:
        e = Entry(*e)
        for kind, index in enumerate(e):
            lines[kind, index].append(e)
    return [pair for members in lines.values() for pair in itertools.combinations(members, 2)]


def _class_of_edges(edges: list[tuple[Entry, Entry]]) -> CoverClass:
    degrees = Counter(v for edge in edges for v in edge)
    key = tuple(sorted(degrees.values(), reverse=True))
    try:
        return _BY_DEGREES[key]
    except KeyError:
        raise UnexpectedGraph(key) from None


def _classify_cells(square: LatinSquare, cells: Iterable[int]) -> CoverClass:
    n, grid = square.n, square.grid
    return _class_of_edges(_edges((cell // n, cell % n, grid[cell // n][cell % n]) for cell in cells))


def _as_np1_cover(square: LatinSquare, cover: Iterable[tuple[int, int, int]]) -> EntrySet:
    entries = cover if isinstance(cover, EntrySet) else EntrySet(square, cover)
    if len(entries) != square.n + 1:
        raise WrongSize(len(entries), square.n + 1)
    if not is_cover(entries):
        raise NotACover(len(entries))
    return entries


def classify(square: LatinSquare, cover: Iterable[tuple[int, int, int]]) -> CoverClass:
    """
    Return the class of the graph an (n+1)-cover induces.

    Raises:
        WrongSize: the cover does not have n+1 entries.
        NotACover: some line is not represented.
        UnexpectedGraph: the induced graph is none of the five.
    """

    return _class_of_edges(_edges(_as_np1_cover(square, cover)))


def _comb(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def pt_count_formula(cls: CoverClass | str, n: int, d: int) -> int:
    """
    The number of deficit-d partial transversals inside an (n+1)-cover of class `cls`.
    """

    match CoverClass(cls):
        case CoverClass.G1:
            m = n - 5
            return 8 * _comb(m, d - 2) + 12 * _comb(m, d - 3) + 6 * _comb(m, d - 4) + _comb(m, d - 5)
        case CoverClass.G2:
            m = n - 4
            return 2 * _comb(m, d - 1) + 7 * _comb(m, d - 2) + 5 * _comb(m, d - 3) + _comb(m, d - 4)
        case CoverClass.G3:
            m = n - 3
            return 3 * _comb(m, d - 1) + 4 * _comb(m, d - 2) + _comb(m, d - 3)
        case CoverClass.G4:
            m = n - 3
            return _comb(m, d) + 3 * _comb(m, d - 1) + 4 * _comb(m, d - 2) + _comb(m, d - 3)
        case CoverClass.G5:
            m = n - 2
            return 3 * _comb(m, d - 1) + _comb(m, d - 2)


def _independent_sets(edges: list[tuple[Entry, Entry]], include: Entry | None = None) -> Counter[int]:
    """
    Count the independent subsets of the non-isolated vertices by size, optionally only those containing `include`.
    """

    vertices = sorted({v for edge in edges for v in edge})
    adjacent = {frozenset(edge) for edge in edges}
    sizes: Counter[int] = Counter()
    for k in range(len(vertices) + 1):
        for subset in itertools.combinations(vertices, k):
            if include is not None and include not in subset:
                continue
            if any(frozenset(pair) in adjacent for pair in itertools.combinations(subset, 2)):
                continue
            sizes[k] += 1
    return sizes


def pts_in_cover(square: LatinSquare, cover: Iterable[tuple[int, int, int]], d: int) -> int:
    """
    Count the partial transversals of deficit d contained in an (n+1)-cover.

    A partial transversal inside the cover is an independent set of its induced graph;
    isolated entries combine freely with any independent set of the six or fewer others.

    Raises:
        WrongSize: the cover does not have n+1 entries.
        NotACover: some line is not represented.
    """

    entries = _as_np1_cover(square, cover)
    edges = _edges(entries)
    isolated = len(entries) - len({v for edge in edges for v in edge})
    k = square.n - d
    return sum(count * _comb(isolated, k - size) for size, count in _independent_sets(edges).items())


def every_entry_in_deficit2_pt(square: LatinSquare, cover: Iterable[tuple[int, int, int]]) -> bool:
    """
    Whether every entry of an (n+1)-cover lies in a deficit-2 partial transversal inside the cover.
    """

    entries = _as_np1_cover(square, cover)
    edges = _edges(entries)
    touched = {v for edge in edges for v in edge}
    isolated = len(entries) - len(touched)
    k = square.n - 2
    for e in entries:
        if e in touched:
            sets = _independent_sets(edges, include=e)
            if not any(count and _comb(isolated, k - size) for size, count in sets.items()):
                return False
        elif not any(count and _comb(isolated - 1, k - 1 - size) for size, count in _independent_sets(edges).items()):
            return False
    return True


def cover_switches(
    square: LatinSquare, cover: Iterable[tuple[int, int, int]], target: CoverClass | str
) -> list[tuple[Entry, Entry]]:
    """
    List every (removed, added) exchange of one entry turning an (n+1)-cover into one of class `target`.
    """

    entries = _as_np1_cover(square, cover)
    target = CoverClass(target)
    out: list[tuple[Entry, Entry]] = []
    for removed in sorted(entries):
        base = entries.copy()
        base.discard(removed)
        for added in square.entries():
            if added in entries:
                continue
            base.add(added)
            if is_cover(base) and _class_of_edges(_edges(base)) is target:
                out.append((Entry(*removed), added))
            base.discard(added)
    return out
