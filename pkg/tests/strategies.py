from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from latcov.core import Conjugate, Isotopism, random_square


def squares(min_order: int = 1, max_order: int = 7) -> st.SearchStrategy:
    """
    Random squares drawn from a seed, with a short Markov chain to keep examples fast.
    """

    return st.builds(
        lambda n, seed: random_square(n, seed, moves=2 * n**3),
        st.integers(min_order, max_order),
        st.integers(0, 2**32 - 1),
    )


def isotopisms(n: int) -> st.SearchStrategy:
    return st.integers(0, 2**32 - 1).map(lambda seed: Isotopism.random(n, np.random.default_rng(seed)))


conjugates = st.sampled_from(list(Conjugate))
