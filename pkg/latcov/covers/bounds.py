from __future__ import annotations

import math
from typing import TYPE_CHECKING

from latcov.transversals import min_deficit

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare
    from latcov.utils import SearchBudget


def mu_bound(n: int) -> int:
    """
    The largest size of a minimal cover of an order-n square allowed by the bound
    floor(3(n + 1/2 - sqrt(n + 1/4))).

    Compared exactly: m is admissible iff 6n + 3 - 2m >= 0 and (6n + 3 - 2m)^2 >= 9(4n + 1).
    """

    if n < 1:
        raise ValueError("The order must be positive")
    m = (6 * n + 3 - 3 * math.isqrt(4 * n + 1)) // 2
    while (6 * n + 3 - 2 * m) ** 2 < 9 * (4 * n + 1):
        m -= 1
    return m


def min_cover_size(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    The size n + ceil(d/2) of a minimum cover, d being the minimum deficit of a partial transversal.
    """

    d = min_deficit(square, budget=budget)
    return square.n + (d + 1) // 2
