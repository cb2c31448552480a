from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.core.sampling import random_square
from latcov.logger import logger
from latcov.transversals.partial_transversal import PartialTransversal
from latcov.utils import Runner, SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


def _spanning_pt(
    square: LatinSquare, rows: list[int], cols: int, required: int, budget: SearchBudget
) -> list[tuple[int, int, int]] | None:
    """
    Match every row of `rows` to a distinct column of the mask `cols` with distinct symbols,
    using every symbol of the mask `required`.
    """

    grid, n = square.grid, square.n
    picked: list[tuple[int, int, int]] = []

    def rec(i: int, free_cols: int, used: int) -> bool:
        budget.spend()
        if (required & ~used).bit_count() > len(rows) - i:
            return False
        if i == len(rows):
            return True
        r = rows[i]
        row = grid[r]
        for c in range(n):
            s = row[c]
            if free_cols >> c & 1 and not used >> s & 1:
                picked.append((r, c, s))
                if rec(i + 1, free_cols & ~(1 << c), used | 1 << s):
                    return True
                picked.pop()
        return False

    return picked if rec(0, cols, 0) else None


def shortest_maximal_pt(square: LatinSquare, *, budget: SearchBudget | None = None) -> PartialTransversal:
    """
    Return a maximal partial transversal of least size.

    A partial transversal of deficit d leaving rows R, columns C and symbols S free is
    maximal exactly when the R x C submatrix avoids S. Deficits are tried from the
    largest possible, floor(n/2), downwards: for every d-set of rows and of columns whose
    submatrix misses at least d symbols, the complementary rows and columns are matched
    so that every symbol of the submatrix is used.

    Raises:
        BudgetExceeded: the search expands more nodes than allowed.
    """

    budget = resolve(budget)
    n, grid = square.n, square.grid
    full = (1 << n) - 1
    for d in range(n // 2, 0, -1):
        for free_rows in itertools.combinations(range(n), d):
            rows = [r for r in range(n) if r not in free_rows]
            for free_cols in itertools.combinations(range(n), d):
                budget.spend()
                present = 0
                for r in free_rows:
                    for c in free_cols:
                        present |= 1 << grid[r][c]
                if present.bit_count() > n - d:
                    continue
                cols = full & ~sum(1 << c for c in free_cols)
                picked = _spanning_pt(square, rows, cols, present, budget)
                if picked is not None:
                    logger.debug(f"Maximal partial transversal of deficit {d} found ({budget.spent} nodes)")
                    return PartialTransversal(square, picked)

    # every maximal partial transversal is a transversal
    chosen = []
    used_cols = 0
    used_syms = 0

    def rec(r: int) -> bool:
        nonlocal used_cols, used_syms
        budget.spend()
        if r == n:
            return True
        for c in range(n):
            s = grid[r][c]
            if not used_cols >> c & 1 and not used_syms >> s & 1:
                used_cols |= 1 << c
                used_syms |= 1 << s
                chosen.append((r, c, s))
                if rec(r + 1):
                    return True
                chosen.pop()
                used_cols &= ~(1 << c)
                used_syms &= ~(1 << s)
        return False

    rec(0)
    return PartialTransversal(square, chosen)


def min_maximal_pt_size(square: LatinSquare, *, budget: SearchBudget | None = None) -> int:
    """
    Return the least size of a maximal partial transversal (at least ceil(n/2)).
    """

    return len(shortest_maximal_pt(square, budget=budget))


@dataclass(slots=True)
class DeficitCensus:
    """
    Distribution of the shortest maximal partial transversal over random squares.
    """

    order: int
    samples: int
    seed: int
    sizes: tuple[int, ...]
    counts: dict[int, int] = field(init=False)

    def __post_init__(self) -> None:
        self.counts = dict(sorted(Counter(self.sizes).items()))

    @property
    def largest_deficit(self) -> int:
        return self.order - min(self.sizes) if self.sizes else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "samples": self.samples,
            "seed": self.seed,
            "sizes": list(self.sizes),
            "counts": {str(k): v for k, v in self.counts.items()},
        }

    def summary(self) -> None:
        print(f"## Shortest maximal partial transversals, order {self.order}, {self.samples} squares, seed {self.seed}")
        headers = ["Size", "Deficit", "Squares"]
        table = [[size, self.order - size, count] for size, count in self.counts.items()]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))

    def plot(self, path: str | Path | None = None) -> None:
        from matplotlib import pyplot as plt

        plt.bar([str(k) for k in self.counts], list(self.counts.values()))
        plt.title(f"Shortest maximal partial transversal, order {self.order}")
        plt.xlabel("Size")
        plt.ylabel("Squares")
        if path is not None:
            plt.savefig(path)
        else:
            plt.show()
        plt.close()


def _sample_worker(args: tuple[int, int, tuple[int, int | None]]) -> int:
    _, seed, (n, nodes) = args
    budget = SearchBudget(nodes) if nodes is not None else None
    return min_maximal_pt_size(random_square(n, seed), budget=budget)


def deficit_census_sample(
    n: int,
    samples: int,
    seed: int = 0,
    *,
    workers: int = 1,
    budget: SearchBudget | None = None,
) -> DeficitCensus:
    """
    Sample random squares of order n and record the size of their shortest maximal partial transversal.

    Each sample gets its own seed spawned from `seed`, so the report depends only on
    (n, samples, seed), whatever the number of workers.

    Raises:
        BudgetExceeded: a single square needs more nodes than the budget allows.
    """

    nodes = budget.nodes if budget is not None else None
    runner: Runner[tuple[int, int | None], int] = Runner(jobs=[(n, nodes)] * samples, n_workers=workers, seed=seed)
    sizes = runner(_sample_worker, parallel=workers > 1)
    logger.info(f"Sampled {samples} squares of order {n}: shortest maximal partial transversals {sorted(set(sizes))}")
    return DeficitCensus(order=n, samples=samples, seed=seed, sizes=tuple(sizes))
