from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from math import factorial
from pathlib import Path
from typing import TYPE_CHECKING, Any

from latcov.core.io import read_ls_blocks, write_ls_blocks
from latcov.core.latin_square import LatinSquare
from latcov.isoclasses.canonical import (
    autotopism_count,
    canonical_isotopy_form,
    cycle_row,
    cycle_type,
    species_id,
)
from latcov.logger import logger
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.np1census.census import CoverCensus

_HEADER = "latcov isotopy classes"


@dataclass(slots=True)
class IsotopyClassRecord:
    representative: LatinSquare
    autotopisms: int
    class_size: int
    species: LatinSquare
    census: CoverCensus | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "representative": [list(row) for row in self.representative.grid],
            "autotopisms": self.autotopisms,
            "class_size": self.class_size,
            "species": [list(row) for row in self.species.grid],
        }
        if self.census is not None:
            out["census"] = self.census.to_dict()
        return out


def _derangement_types(n: int) -> list[tuple[int, ...]]:
    """
    Cycle types without fixed points, ordered by their canonical rows.
    """

    out: list[tuple[int, ...]] = []

    def rec(remaining: int, smallest: int, parts: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(parts))
            return
        for part in range(smallest, remaining + 1):
            rec(remaining - part, part, [*parts, part])

    rec(n, 2, [])
    return sorted(out, key=cycle_row)


def _reduced_squares(n: int, second: tuple[int, ...], budget: SearchBudget) -> Iterator[LatinSquare]:
    """
    Reduced squares with the given second row, pruned whenever a pair of complete rows
    has a cycle type whose canonical row is below the second row.
    """

    grid = [list(range(n)), list(second)] + [[-1] * n for _ in range(n - 2)]
    col_used = [1 << grid[0][c] | 1 << grid[1][c] for c in range(n)]

    def pairs_ok(r: int) -> bool:
        for other in range(r):
            perm = [0] * n
            for a, b in zip(grid[other], grid[r]):
                perm[a] = b
            if cycle_row(cycle_type(perm)) < second:
                return False
        return True

    def fill(r: int, c: int, row_used: int) -> Iterator[LatinSquare]:
        budget.spend()
        if r == n:
            yield LatinSquare(tuple(tuple(row) for row in grid))
            return
        if c == n:
            if pairs_ok(r):
                yield from fill(r + 1, 1, 1 << (r + 1))
            return
        for s in range(n):
            bit = 1 << s
            if row_used & bit or col_used[c] & bit:
                continue
            grid[r][c] = s
            col_used[c] |= bit
            yield from fill(r, c + 1, row_used | bit)
            col_used[c] &= ~bit
        grid[r][c] = -1

    for r in range(2, n):
        grid[r][0] = r
        col_used[0] |= 1 << r
    yield from fill(2, 1, 1 << 2)


def _read_checkpoint(path: Path, n: int) -> tuple[set[str], list[LatinSquare]]:
    if not path.exists():
        return set(), []
    first = path.read_text(encoding="utf-8").splitlines()[0]
    done_part = first.split("done:", 1)[1].strip() if "done:" in first else ""
    done = {item for item in done_part.split(",") if item}
    squares = [sq for sq in read_ls_blocks(path) if sq.n == n]
    return done, squares


def _type_label(lengths: tuple[int, ...]) -> str:
    return ".".join(map(str, lengths))


def isotopy_representatives(
    n: int, *, checkpoint: str | Path | None = None, budget: SearchBudget | None = None
) -> list[LatinSquare]:
    """
    The canonical forms of every isotopy class of order n, in ascending order.

    Reduced squares are generated row by row for each second row in turn, from the
    least canonical row upward; each generated square is canonicalized and deduplicated.
    With a checkpoint file, the canonical forms found so far are written after every
    second row, together with the list of finished second rows, and a rerun resumes there.

    Raises:
        BudgetExceeded: generation or canonicalization expands more nodes than allowed.
    """

    budget = resolve(budget)
    if n <= 2:
        return [LatinSquare(tuple(tuple((r + c) % n for c in range(n)) for r in range(n)))]

    path = Path(checkpoint) if checkpoint is not None else None
    done, found = _read_checkpoint(path, n) if path is not None else (set(), [])
    forms = set(found)
    for lengths in _derangement_types(n):
        label = _type_label(lengths)
        if label in done:
            continue
        second = cycle_row(lengths)
        generated = 0
        for square in _reduced_squares(n, second, budget):
            generated += 1
            forms.add(canonical_isotopy_form(square, budget=budget))
        done.add(label)
        logger.debug(f"Order {n}, second row {second}: {generated} reduced squares, {len(forms)} classes so far")
        if path is not None:
            write_ls_blocks(sorted(forms), path, f"{_HEADER} order {n} done:{','.join(sorted(done))}")
    return sorted(forms)


def enumerate_isotopy_classes(
    n: int, *, checkpoint: str | Path | None = None, budget: SearchBudget | None = None
) -> Iterator[IsotopyClassRecord]:
    """
    Stream one record per isotopy class of order n.

    Raises:
        BudgetExceeded: the work expands more nodes than allowed.
    """

    budget = resolve(budget)
    representatives = isotopy_representatives(n, checkpoint=checkpoint, budget=budget)
    logger.info(f"Order {n}: {len(representatives)} isotopy classes")
    for square in representatives:
        atp = autotopism_count(square, budget=budget)
        yield IsotopyClassRecord(
            representative=square,
            autotopisms=atp,
            class_size=factorial(n) ** 3 // atp,
            species=species_id(square, budget=budget),
        )
