from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.core.latin_square import LatinSquare
from latcov.covers.bounds import mu_bound
from latcov.covers.minimal_search import max_minimal_cover_size
from latcov.isoclasses.generation import IsotopyClassRecord, enumerate_isotopy_classes
from latcov.logger import logger
from latcov.np1census.census import CoverCensus, census
from latcov.utils import Runner, SearchBudget

if TYPE_CHECKING:
    from collections.abc import Sequence

_COLUMNS = ("q1", "q2", "q3", "q4", "q5", "All")


def round_half_up(value: Fraction) -> int:
    return int((value * 2 + 1) // 2)


def _row(result: CoverCensus) -> tuple[int, ...]:
    return (*result.q, result.total)


@dataclass(slots=True)
class AveragedCensus:
    """
    (n+1)-cover counts by class averaged over the isotopy classes of order n, with the
    same averages over species, and the per-column minimum and maximum.
    """

    order: int
    rows: list[tuple[int, ...]]
    species_rows: list[tuple[int, ...]] = field(default_factory=list)

    @staticmethod
    def _mean(rows: Sequence[tuple[int, ...]]) -> tuple[Fraction, ...]:
        return tuple(Fraction(sum(col), len(rows)) for col in zip(*rows))

    @property
    def classes(self) -> int:
        return len(self.rows)

    @property
    def average(self) -> tuple[Fraction, ...]:
        return self._mean(self.rows)

    @property
    def rounded(self) -> tuple[int, ...]:
        return tuple(round_half_up(x) for x in self.average)

    @property
    def species_average(self) -> tuple[Fraction, ...]:
        return self._mean(self.species_rows) if self.species_rows else ()

    @property
    def minimum(self) -> tuple[int, ...]:
        return tuple(min(col) for col in zip(*self.rows))

    @property
    def maximum(self) -> tuple[int, ...]:
        return tuple(max(col) for col in zip(*self.rows))

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "classes": self.classes,
            "species": len(self.species_rows),
            "columns": list(_COLUMNS),
            "average": list(self.rounded),
            "average_exact": [str(x) for x in self.average],
            "species_average_exact": [str(x) for x in self.species_average],
            "minimum": list(self.minimum),
            "maximum": list(self.maximum),
        }

    def to_csv(self) -> str:
        lines = ["row," + ",".join(_COLUMNS)]
        for name, values in (("average", self.rounded), ("minimum", self.minimum), ("maximum", self.maximum)):
            lines.append(name + "," + ",".join(str(v) for v in values))
        return "\n".join(lines) + "\n"

    def summary(self) -> None:
        print(f"## (n+1)-covers averaged over {self.classes} isotopy classes of order {self.order}")
        headers = ["", *_COLUMNS]
        table = [
            ["Average", *self.rounded],
            ["Minimum", *self.minimum],
            ["Maximum", *self.maximum],
        ]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def _census_worker(args: tuple[int, int, tuple[tuple[int, ...], ...]]) -> CoverCensus:
    _, _, grid = args
    return census(LatinSquare(grid))


def _records(n: int, checkpoint: str | Path | None, budget: SearchBudget | None) -> list[IsotopyClassRecord]:
    return list(enumerate_isotopy_classes(n, checkpoint=checkpoint, budget=budget))


def averaged_census(
    n: int,
    *,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    budget: SearchBudget | None = None,
) -> AveragedCensus:
    """
    Census every isotopy class of order n and average the counts, unweighted, over the classes.

    Raises:
        BudgetExceeded: class generation expands more nodes than allowed.
    """

    records = _records(n, checkpoint, budget)
    runner: Runner[tuple[tuple[int, ...], ...], CoverCensus] = Runner(
        jobs=[r.representative.grid for r in records], n_workers=workers
    )
    results = runner(_census_worker, parallel=workers > 1)
    by_species: dict[LatinSquare, tuple[int, ...]] = {}
    for record, result in zip(records, results):
        record.census = result
        by_species.setdefault(record.species, _row(result))
    out = AveragedCensus(order=n, rows=[_row(r) for r in results], species_rows=list(by_species.values()))
    logger.info(f"Averaged census of order {n} over {out.classes} classes: {out.rounded}")
    return out


@dataclass(slots=True)
class BoundCensus:
    """
    The largest minimal cover of one square per species of order n, against the size bound.
    """

    order: int
    bound: int
    largest: dict[LatinSquare, int]

    @property
    def species(self) -> int:
        return len(self.largest)

    @property
    def meeting(self) -> list[LatinSquare]:
        return [sp for sp, size in self.largest.items() if size == self.bound]

    @property
    def exceeding(self) -> list[LatinSquare]:
        return [sp for sp, size in self.largest.items() if size > self.bound]

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "bound": self.bound,
            "species": self.species,
            "meeting": len(self.meeting),
            "exceeding": [[list(row) for row in sp.grid] for sp in self.exceeding],
            "largest": sorted(self.largest.values()),
        }

    def summary(self) -> None:
        print(f"## Largest minimal covers over the {self.species} species of order {self.order}, bound {self.bound}")
        headers = ["Species", "Largest minimal cover", "Meets bound"]
        table = [
            [i, size, "yes" if size == self.bound else "no"] for i, size in enumerate(self.largest.values())
        ]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def _bound_worker(args: tuple[int, int, tuple[tuple[int, ...], ...]]) -> int:
    _, _, grid = args
    n = len(grid)
    return max_minimal_cover_size(LatinSquare(grid), ceiling=3 * n)


def bound_census(
    n: int,
    *,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    budget: SearchBudget | None = None,
) -> BoundCensus:
    """
    Compute the largest minimal cover of one square per species of order n.

    Raises:
        BudgetExceeded: class generation expands more nodes than allowed.
    """

    species: dict[LatinSquare, None] = {}
    for record in _records(n, checkpoint, budget):
        species.setdefault(record.species, None)
    reps = list(species)
    runner: Runner[tuple[tuple[int, ...], ...], int] = Runner(jobs=[sp.grid for sp in reps], n_workers=workers)
    sizes = runner(_bound_worker, parallel=workers > 1)
    out = BoundCensus(order=n, bound=mu_bound(n), largest=dict(zip(reps, sizes)))
    logger.info(f"Order {n}: {len(out.meeting)} of {out.species} species meet the bound {out.bound}")
    return out
