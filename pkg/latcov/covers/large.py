from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
from tabulate import tabulate

from latcov.config import LargeCoverConfig, default_large_cover_config
from latcov.core.entry_set import EntrySet
from latcov.covers.cover import strip_redundancies
from latcov.covers.extension import extend_partial_minimal_cover
from latcov.exceptions import SamplingFailed
from latcov.logger import logger

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from latcov.core.latin_square import LatinSquare
    from latcov.covers.cover import Cover


@dataclass(slots=True)
class LargeCoverTrace:
    """
    Record of one run of the randomized large minimal cover procedure.

    Attributes:
        eps: The exponent parameter.
        psi: floor(n ** (1/2 + eps)).
        withheld: The symbols kept out of the initial cover.
        u1: The columns whose first psi rows provide the initial cover.
        u2: The rows whose withheld-symbol entries are added.
        u3: The columns whose withheld-symbol entries are added.
        u4: The rows covered by the added entries.
        u5: The columns covered by the added entries.
        fallbacks: The stages where no random choice passed and a greedy one was used.
        partial_size: The size of the partial minimal cover before extension.
        size: The size of the final minimal cover.
        allowed_deficit: deficit_constant * psi from the configuration.
    """

    order: int
    eps: float
    seed: int
    psi: int
    withheld: tuple[int, ...] = ()
    u1: tuple[int, ...] = ()
    u2: tuple[int, ...] = ()
    u3: tuple[int, ...] = ()
    u4: tuple[int, ...] = ()
    u5: tuple[int, ...] = ()
    fallbacks: list[str] = field(default_factory=list)
    partial_size: int = 0
    size: int = 0
    allowed_deficit: float = 0.0

    @property
    def deficit(self) -> int:
        return 3 * self.order - self.size

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "eps": self.eps,
            "seed": self.seed,
            "psi": self.psi,
            "withheld": list(self.withheld),
            "u1": list(self.u1),
            "u2": list(self.u2),
            "u3": list(self.u3),
            "u4": len(self.u4),
            "u5": len(self.u5),
            "fallbacks": list(self.fallbacks),
            "partial_size": self.partial_size,
            "size": self.size,
            "deficit": self.deficit,
            "allowed_deficit": self.allowed_deficit,
        }

    def summary(self) -> None:
        print(f"## Large minimal cover, order {self.order}, eps {self.eps}, seed {self.seed}")
        headers = ["Quantity", "Value"]
        table = [
            ["psi", self.psi],
            ["|U1|", len(self.u1)],
            ["|U2|", len(self.u2)],
            ["|U3|", len(self.u3)],
            ["|U4|", len(self.u4)],
            ["|U5|", len(self.u5)],
            ["Greedy fallbacks", ", ".join(self.fallbacks) or "-"],
            ["Partial minimal cover", self.partial_size],
            ["Minimal cover", self.size],
            ["Deficit from 3n", f"{self.deficit} (allowed {self.allowed_deficit:.1f})"],
            ["Fraction of 3n", f"{self.size / (3 * self.order):.3f}"],
        ]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def _select(
    rng: np.random.Generator,
    pool: Sequence[int],
    k: int,
    reach: Callable[[int], set[int]],
    targets: int,
    allowed_misses: float,
    retries: int,
    stage: str,
) -> tuple[int, ...]:
    """
    Draw random k-subsets of `pool` until their neighbourhoods miss at most `allowed_misses` of the targets.

    Raises:
        SamplingFailed: no draw passed within `retries` attempts.
    """

    k = min(k, len(pool))
    for _ in range(retries):
        picked = sorted(int(x) for x in rng.choice(np.asarray(pool), size=k, replace=False)) if k else []
        hit: set[int] = set()
        for v in picked:
            hit |= reach(v)
        if targets - len(hit) <= allowed_misses:
            return tuple(picked)
    raise SamplingFailed(stage, retries)


def _greedy(pool: Sequence[int], k: int, reach: Callable[[int], set[int]]) -> tuple[int, ...]:
    hit: set[int] = set()
    picked: list[int] = []
    candidates = list(pool)
    for _ in range(min(k, len(candidates))):
        best = max(candidates, key=lambda v: (len(reach(v) - hit), -v))
        picked.append(best)
        candidates.remove(best)
        hit |= reach(best)
    return tuple(sorted(picked))


def large_minimal_cover(
    square: LatinSquare,
    eps: float,
    seed: int = 0,
    config: LargeCoverConfig | None = None,
) -> tuple[Cover, LargeCoverTrace]:
    """
    Build a minimal cover of size close to 3n.

    With psi = floor(n ** (1/2 + eps)): a random psi-set U1 of columns is drawn so that
    the top psi rows restricted to U1 hold nearly every symbol, and one entry per such
    symbol starts the cover. psi symbols are then withheld (freeing entries if needed).
    Among the remaining rows and columns, a random row set U2 and column set U3 are drawn
    so that the withheld-symbol entries in them reach nearly every column and row; those
    entries are added, redundant entries are stripped and the partial minimal cover is
    extended to a minimal cover.

    Each random stage is retried `config["retries"]` times before a greedy choice is made.
    The output depends only on (square, eps, seed, config).

    Raises:
        ValueError: eps is outside (0, 1/2).
    """

    if not 0 < eps < 0.5:
        raise ValueError(f"eps={eps} outside (0, 1/2)")
    config = config or default_large_cover_config()
    n, grid = square.n, square.grid
    rng = np.random.default_rng(seed)
    psi = max(1, math.floor(n ** (0.5 + eps)))
    k = max(1, min(n, math.ceil(config["size_constant"] * psi)))
    allowed = config["threshold_factor"] * n ** (0.5 + 2 * eps)
    trace = LargeCoverTrace(order=n, eps=eps, seed=seed, psi=psi, allowed_deficit=config["deficit_constant"] * psi)

    def choose(pool: Sequence[int], reach: Callable[[int], set[int]], targets: int, stage: str) -> tuple[int, ...]:
        try:
            return _select(rng, pool, k, reach, targets, allowed, config["retries"], stage)
        except SamplingFailed as exc:
            logger.warning(f"{exc}; falling back to a greedy choice")
            trace.fallbacks.append(stage)
            return _greedy(pool, k, reach)

    top = range(min(psi, n))
    u1 = choose(range(n), lambda c: {grid[r][c] for r in top}, n, "U1")
    trace.u1 = u1

    initial: dict[int, tuple[int, int, int]] = {}
    for r in top:
        for c in u1:
            initial.setdefault(grid[r][c], (r, c, grid[r][c]))
    missing = [s for s in range(n) if s not in initial]
    withheld = missing[:psi]
    for s in sorted(initial, reverse=True):
        if len(withheld) >= psi:
            break
        del initial[s]
        withheld.append(s)
    trace.withheld = tuple(sorted(withheld))
    psi_set = set(withheld)

    rows2 = [r for r in range(n) if r >= psi]
    in_u1 = set(u1)
    cols2 = [c for c in range(n) if c not in in_u1]
    cols2_set = set(cols2)
    rows2_set = set(rows2)
    u2 = choose(rows2, lambda r: {c for c in cols2 if grid[r][c] in psi_set}, len(cols2), "U2")
    u3 = choose(cols2, lambda c: {r for r in rows2 if grid[r][c] in psi_set}, len(rows2), "U3")
    trace.u2, trace.u3 = u2, u3

    entries = EntrySet(square, initial.values())
    added = [(r, c, grid[r][c]) for r in u2 for c in cols2 if grid[r][c] in psi_set]
    added += [(r, c, grid[r][c]) for c in u3 for r in rows2 if grid[r][c] in psi_set]
    for e in added:
        entries.add(e)
    trace.u4 = tuple(sorted({r for r, _, _ in added if r in rows2_set}))
    trace.u5 = tuple(sorted({c for _, c, _ in added if c in cols2_set}))

    partial = strip_redundancies(entries)
    trace.partial_size = len(partial)
    cover = extend_partial_minimal_cover(square, partial)
    trace.size = len(cover)
    logger.info(
        f"Large minimal cover of order {n}: partial {trace.partial_size}, final {trace.size} "
        f"({trace.size / (3 * n):.3f} of 3n)"
    )
    if trace.deficit > trace.allowed_deficit:
        logger.warning(
            f"Large minimal cover of order {n} is {trace.deficit} short of 3n (allowed {trace.allowed_deficit:.1f})"
        )
    return cover, trace
