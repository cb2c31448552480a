from __future__ import annotations

import math
from collections.abc import Iterable

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.core.isotopism import Isotopism
from latcov.core.latin_square import LatinSquare
from latcov.core.sampling import random_square
from latcov.exceptions import BudgetExceeded, NotATransversal, NotFound, Unsupported
from latcov.logger import logger
from latcov.transversals.partial_transversal import PartialTransversal, is_partial_transversal
from latcov.transversals.search import find_pt, transversal_avoiding
from latcov.utils import SearchBudget, resolve

_SEED_ATTEMPTS = 64


def idempotentize(square: LatinSquare, transversal: Iterable[tuple[int, int, int]]) -> LatinSquare:
    """
    Apply the isotopism moving the transversal's entry in row i to (i, i, i).

    Raises:
        NotATransversal: the entries do not form a transversal of the square.
    """

    entries = EntrySet(square, transversal)
    if len(entries) != square.n or not is_partial_transversal(entries):
        raise NotATransversal(len(entries))
    n = square.n
    cols, syms = [0] * n, [0] * n
    for r, c, s in entries:
        cols[c], syms[s] = r, r
    return Isotopism(tuple(range(n)), tuple(cols), tuple(syms)).apply(square)


def idempotent_square(k: int) -> LatinSquare:
    """
    An idempotent Latin square of order k.

    Odd k uses L[i][j] = (i + j)(k + 1)/2 mod k. Even k idempotentizes the first sampled
    square that has a transversal.

    Raises:
        Unsupported: k = 2 (or k < 1).
    """

    if k < 1 or k == 2:
        raise Unsupported("k", k)
    if k % 2:
        half = (k + 1) // 2
        return LatinSquare(tuple(tuple((i + j) * half % k for j in range(k)) for i in range(k)))
    for seed in range(_SEED_ATTEMPTS):
        square = random_square(k, seed)
        pt = find_pt(square, 0)
        if pt is not None:
            return idempotentize(square, pt)
    raise NotFound(f"idempotent square of order {k}")


def _linear_step(square: LatinSquare) -> tuple[int, int] | None:
    """
    (a, b) when L[i][j] = L[0][0] + a i + b j (mod n) with a + b a unit, else None.
    """

    n, g = square.n, square.grid
    if n < 2:
        return None
    a, b = (g[1][0] - g[0][0]) % n, (g[0][1] - g[0][0]) % n
    if math.gcd(a + b, n) != 1:
        return None
    if any(g[i][j] != (g[0][0] + a * i + b * j) % n for i in range(n) for j in range(n)):
        return None
    return a, b


def _broken_diagonal(square: LatinSquare, d: int) -> tuple[Entry, ...]:
    n = square.n
    return tuple(square.entry(i, (i + d) % n) for i in range(n))


def disjoint_transversals(
    square: LatinSquare, k: int, avoid_diagonal: bool = False, *, budget: SearchBudget | None = None
) -> list[PartialTransversal]:
    """
    Return k pairwise disjoint transversals, none meeting the main diagonal when `avoid_diagonal` is set.

    Squares of the form L[i][j] = L[0][0] + a i + b j (mod n) with a + b invertible, such as
    odd cyclic tables, get their broken diagonals j - i = 1, 2, ... directly. Other squares
    are searched depth first.

    Raises:
        NotFound: no such family exists within the budget.
    """

    n = square.n
    if k <= 0:
        return []
    if _linear_step(square) is not None:
        shifts = list(range(1, n)) + ([] if avoid_diagonal else [0])
        if k <= len(shifts):
            return [PartialTransversal(square, _broken_diagonal(square, d)) for d in shifts[:k]]
        raise NotFound(f"{k} disjoint transversals of order {n}")

    budget = resolve(budget)
    start = frozenset(i * n + i for i in range(n)) if avoid_diagonal else frozenset()
    chosen: list[PartialTransversal] = []

    def rec(forbidden: frozenset[int]) -> bool:
        if len(chosen) == k:
            return True
        for pt in transversal_avoiding(square, forbidden, budget=budget):
            # canonical order: each transversal holds a lower cell in row 0 than the next
            if chosen and pt.entries[0].col < chosen[-1].entries[0].col:
                continue
            chosen.append(pt)
            if rec(forbidden | pt.cells):
                return True
            chosen.pop()
        return False

    if not rec(start):
        raise NotFound(f"{k} disjoint transversals of order {n}")
    logger.debug(f"Found {k} disjoint transversals of order {n} ({budget.spent} nodes)")
    return list(chosen)


def idempotent_with_disjoint_transversals(
    m: int, k: int, *, budget: SearchBudget | None = None
) -> tuple[LatinSquare, list[PartialTransversal]]:
    """
    An idempotent square of order m with k disjoint transversals avoiding its diagonal.

    Raises:
        Unsupported: m = 2.
        NotFound: no sampled square yields the transversals.
    """

    square = idempotent_square(m)
    if m % 2:
        return square, disjoint_transversals(square, k, avoid_diagonal=True, budget=budget)
    nodes = resolve(budget).nodes
    for seed in range(_SEED_ATTEMPTS):
        base = random_square(m, seed)
        pt = find_pt(base, 0)
        if pt is None:
            continue
        square = idempotentize(base, pt)
        try:
            return square, disjoint_transversals(square, k, avoid_diagonal=True, budget=SearchBudget(nodes))
        except (NotFound, BudgetExceeded):
            logger.debug(f"Sampled square {seed} of order {m} lacks {k} disjoint transversals")
    raise NotFound(f"idempotent square of order {m} with {k} disjoint off-diagonal transversals")
