from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

from latcov.core.latin_square import LatinSquare, validate
from latcov.exceptions import BadParameters, ColRepeat, MatchingFailed, MultiplicityViolation, RowRepeat, SymbolOutOfRange
from latcov.logger import logger

if TYPE_CHECKING:
    from latcov.typings import GridLike


def _perfect_matching(left: list[int], edges: dict[int, list[int]], stage: str, index: int) -> dict[int, int]:
    graph = nx.Graph()
    top = [("l", u) for u in left]
    graph.add_nodes_from(top, bipartite=0)
    for u in left:
        for v in edges[u]:
            graph.add_edge(("l", u), ("r", v))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    out = {u: matching[("l", u)][1] for u in left if ("l", u) in matching}
    if len(out) != len(left):
        raise MatchingFailed(stage, index)
    return out


def _check_partial(block: np.ndarray, n: int) -> None:
    m = block.shape[0]
    for r in range(m):
        for c in range(m):
            if not 0 <= block[r, c] < n:
                raise SymbolOutOfRange(r, c, int(block[r, c]))
    for r in range(m):
        seen = Counter(block[r].tolist())
        for s, k in seen.items():
            if k > 1:
                raise RowRepeat(r, s)
    for c in range(m):
        seen = Counter(block[:, c].tolist())
        for s, k in seen.items():
            if k > 1:
                raise ColRepeat(c, s)


def ryser_embed(block: GridLike | np.ndarray, n: int) -> LatinSquare:
    """
    Embed an m x m Latin array on the symbols {0, ..., n-1} in a Latin square of order n.

    Each symbol must occur at least 2m - n times. The array is first widened to an m x n
    Latin rectangle one column at a time: every symbol still occurring exactly
    (width + m - n) times must go into the new column, and a perfect matching between the
    rows plus n - m placeholder rows and the symbols enforces it. The rectangle is then
    completed one row at a time by perfect matchings between columns and the symbols
    missing from them.

    Raises:
        BadParameters: the array is not square or m > n.
        MultiplicityViolation: a symbol occurs fewer than 2m - n times.
        MatchingFailed: no matching exists; cannot happen when the multiplicities hold.
    """

    block = np.asarray(block, dtype=np.int64)
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise BadParameters(f"array of shape {block.shape} is not square")
    m = block.shape[0]
    if m > n:
        raise BadParameters(f"array of order {m} does not fit in order {n}")
    _check_partial(block, n)
    counts = Counter(block.ravel().tolist())
    for s in range(n):
        if counts[s] < 2 * m - n:
            raise MultiplicityViolation(s, counts[s], 2 * m - n)

    out = np.full((n, n), -1, dtype=np.int64)
    out[:m, :m] = block
    row_has = [set(block[r].tolist()) for r in range(m)]
    placeholders = list(range(m, n))
    for k in range(m, n):
        tight = {s for s in range(n) if counts[s] == k + m - n}
        edges = {r: [s for s in range(n) if s not in row_has[r]] for r in range(m)}
        for p in placeholders:
            edges[p] = [s for s in range(n) if s not in tight]
        matching = _perfect_matching(list(range(n)), edges, "column", k)
        for r in range(m):
            s = matching[r]
            out[r, k] = s
            row_has[r].add(s)
            counts[s] += 1

    col_has = [set(out[:m, c].tolist()) for c in range(n)]
    for r in range(m, n):
        edges = {c: [s for s in range(n) if s not in col_has[c]] for c in range(n)}
        matching = _perfect_matching(list(range(n)), edges, "row", r)
        for c in range(n):
            out[r, c] = matching[c]
            col_has[c].add(matching[c])

    logger.debug(f"Embedded an array of order {m} in a Latin square of order {n}")
    return validate(out)
