from __future__ import annotations

import numpy as np

from latcov.core.latin_square import LatinSquare, cyclic_square
from latcov.logger import logger


class _IncidenceCube:
    """
    The n x n x n incidence array of a (possibly improper) Latin square.

    Cells hold +1, 0 or, for at most one cell, -1; every line sums to 1.
    Only the nonzero cells are stored, with an index of the +1 cells along each
    of the three directions.
    """

    __slots__ = ("n", "value", "rc", "rs", "cs", "improper")

    def __init__(self, square: LatinSquare) -> None:
        n = square.n
        self.n = n
        self.value: dict[tuple[int, int, int], int] = {}
        self.rc: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        self.rs: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        self.cs: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        self.improper: tuple[int, int, int] | None = None
        for r, c, s in square.entries():
            self._bump(r, c, s, 1)

    def _bump(self, r: int, c: int, s: int, delta: int) -> None:
        key = (r, c, s)
        old = self.value.get(key, 0)
        new = old + delta
        if new:
            self.value[key] = new
        else:
            del self.value[key]
        if old == 1:
            self.rc[r][c].remove(s)
            self.rs[r][s].remove(c)
            self.cs[c][s].remove(r)
        if new == 1:
            self.rc[r][c].append(s)
            self.rs[r][s].append(c)
            self.cs[c][s].append(r)
        if new == -1:
            self.improper = key
        elif old == -1 and self.improper == key:
            self.improper = None

    def step(self, rng: np.random.Generator) -> None:
        n = self.n
        if self.improper is None:
            while True:
                r, c, s = (int(x) for x in rng.integers(n, size=3))
                if (r, c, s) not in self.value:
                    break
            r1 = self.cs[c][s][0]
            c1 = self.rs[r][s][0]
            s1 = self.rc[r][c][0]
        else:
            r, c, s = self.improper
            r1 = self.cs[c][s][int(rng.integers(2))]
            c1 = self.rs[r][s][int(rng.integers(2))]
            s1 = self.rc[r][c][int(rng.integers(2))]

        for key in ((r, c1, s), (r1, c, s), (r, c, s1), (r1, c1, s1)):
            self._bump(*key, -1)
        for key in ((r, c, s), (r1, c1, s), (r1, c, s1), (r, c1, s1)):
            self._bump(*key, 1)

    def to_square(self) -> LatinSquare:
        return LatinSquare(tuple(tuple(self.rc[r][c][0] for c in range(self.n)) for r in range(self.n)))


def random_square(n: int, seed: int, moves: int | None = None) -> LatinSquare:
    """
    Sample a Latin square of order n with the Jacobson-Matthews Markov chain.

    The chain starts from the Cayley table of Z_n and performs `moves` +-1 moves
    (default 20*n^3), then keeps moving until the state is proper again.
    The output is a function of (n, seed, moves) only.

    Args:
        n: The order of the square.
        seed: The seed of the numpy random generator.
        moves: The number of moves to perform.
    """

    if n < 1:
        raise ValueError("The order must be positive")
    if n <= 2:
        return cyclic_square(n) if n == 1 or seed % 2 == 0 else LatinSquare(((1, 0), (0, 1)))

    moves = 20 * n**3 if moves is None else moves
    rng = np.random.default_rng(seed)
    cube = _IncidenceCube(cyclic_square(n))
    done = 0
    while done < moves or cube.improper is not None:
        cube.step(rng)
        done += 1
    logger.debug(f"Sampled an order-{n} square with {done} moves (seed={seed})")
    return cube.to_square()
