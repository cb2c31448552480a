from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from latcov.constructions.idempotent import idempotent_square, idempotent_with_disjoint_transversals
from latcov.constructions.ryser import ryser_embed
from latcov.core.latin_square import LatinSquare
from latcov.exceptions import BadParameters, NotMaximal
from latcov.logger import logger
from latcov.transversals.partial_transversal import PartialTransversal

if TYPE_CHECKING:
    from latcov.utils import SearchBudget

# idempotent order-6 arrays on n = 6 + k symbols, each of 0..k-1 six times and the others 6 - k times
_ORDER6_ARRAYS = {
    4: (
        (0, 2, 9, 8, 3, 1),
        (3, 1, 0, 7, 2, 4),
        (9, 0, 2, 1, 6, 3),
        (8, 7, 1, 3, 0, 2),
        (1, 3, 5, 2, 4, 0),
        (2, 6, 3, 0, 1, 5),
    ),
    5: (
        (0, 4, 1, 6, 2, 3),
        (3, 1, 4, 2, 7, 0),
        (4, 8, 2, 0, 3, 1),
        (1, 2, 9, 3, 0, 4),
        (10, 0, 3, 1, 4, 2),
        (2, 3, 0, 4, 1, 5),
    ),
}


def _direct_product(k: int) -> LatinSquare:
    """
    Z_2 x I for an idempotent I of order k: cell (a k + i, b k + j) holds (a + b mod 2) k + I[i][j].
    """

    inner = idempotent_square(k).array
    out = np.empty((2 * k, 2 * k), dtype=np.int64)
    for a in range(2):
        for b in range(2):
            out[a * k : (a + 1) * k, b * k : (b + 1) * k] = ((a + b) % 2) * k + inner
    return LatinSquare.from_array(out)


def relabeled_array(m: int, k: int, *, budget: SearchBudget | None = None) -> np.ndarray:
    """
    An idempotent order-m array on m + k symbols with m copies of each symbol below k and m - k of the others.

    k disjoint transversals of an idempotent square avoid its diagonal; in the transversal
    numbered sigma (from m to m + k - 1) the symbols k, ..., m - 1 are replaced by sigma.
    """

    square, transversals = idempotent_with_disjoint_transversals(m, k, budget=budget)
    out = np.array(square.array)
    for sigma, pt in enumerate(transversals, start=m):
        for r, c, s in pt:
            if s >= k:
                out[r, c] = sigma
    return out


def maximal_pt_square(
    n: int, k: int, *, budget: SearchBudget | None = None
) -> tuple[LatinSquare, PartialTransversal]:
    """
    Build a square of order n with a maximal partial transversal of length n - k.

    The square has L[i][i] = i for i < n - k and its bottom-right k x k block is a subsquare
    on {0, ..., k-1}, so the diagonal prefix cannot be extended. n = 2k is a direct product
    with Z_2; otherwise an idempotent order-(n - k) array with k relabeled transversals
    (fixed arrays when n - k = 6 and k is 4 or 5) is embedded in order n.

    Raises:
        BadParameters: n < 5, k < 1 or n < 2k.
    """

    if n < 5 or k < 1 or n < 2 * k:
        raise BadParameters(f"maximal_pt_square needs n >= 5, k >= 1 and n >= 2k, got n={n}, k={k}")
    m = n - k
    if n == 2 * k:
        square = _direct_product(k)
    elif m == 6 and k in _ORDER6_ARRAYS:
        square = ryser_embed(_ORDER6_ARRAYS[k], n)
    else:
        square = ryser_embed(relabeled_array(m, k, budget=budget), n)

    pt = PartialTransversal(square, ((i, i, i) for i in range(m)))
    block = {square[r, c] for r in range(m, n) for c in range(m, n)}
    if not pt.is_maximal() or block != set(range(k)):
        raise NotMaximal(len(pt))
    logger.info(f"Built an order-{n} square with a maximal partial transversal of length {m}")
    return square, pt
