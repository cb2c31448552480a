from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.core.entry_set import EntrySet
from latcov.core.groups import GroupSpec, cayley_table
from latcov.core.io import load_cover, load_square
from latcov.core.submatrix import submatrix_symbol_coverage
from latcov.covers import extend_partial_minimal_cover, is_cover, unique_partition
from latcov.exceptions import CensusMismatch
from latcov.isoclasses import averaged_census, bound_census
from latcov.logger import logger
from latcov.np1census import (
    CoverClass,
    abelian_prediction,
    classify,
    cover_switches,
    pts_in_cover,
    verify_relations,
)
from latcov.np1census.census import census
from latcov.transversals import PartialTransversal, is_partial_transversal

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare
    from latcov.utils import SearchBudget

# (n+1)-cover counts of the Z_n tables, by class
ZN_CENSUS: dict[int, tuple[int, int, int, int, int]] = {
    5: (100, 0, 0, 300, 0),
    6: (144, 864, 864, 0, 0),
    7: (3528, 0, 0, 5586, 0),
    8: (7424, 27648, 9216, 0, 1024),
    9: (115668, 0, 0, 145800, 0),
}

# average, minimum and maximum over the isotopy classes: q1..q5 and the total
AVERAGED_CENSUS: dict[int, tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = {
    5: ((62, 90, 54, 180, 14, 400), (24, 0, 0, 60, 0, 400), (100, 180, 108, 300, 28, 400)),
    6: ((165, 889, 526, 229, 60, 1871), (0, 288, 0, 0, 0, 1728), (384, 1296, 972, 960, 216, 1944)),
    7: ((1137, 4615, 2413, 900, 132, 9199), (888, 0, 0, 126, 0, 8970), (3528, 5220, 2700, 5586, 195, 9354)),
}

MAX_TABLE_ORDER = max(ZN_CENSUS)


@dataclass(slots=True)
class Check:
    name: str
    expected: Any
    found: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.found


@dataclass(slots=True)
class VerificationReport:
    """
    Outcome of a batch of reproduction checks, each comparing an expected value with a computed one.
    """

    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected: Any, found: Any) -> None:
        check = Check(name, expected, found)
        self.checks.append(check)
        if check.ok:
            logger.debug(f"{name}: ok")
        else:
            logger.error(f"{name}: expected {expected}, found {found}")

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [check for check in self.checks if not check.ok]

    def raise_on_failure(self) -> None:
        """
        Raises:
            CensusMismatch: for the first failing check.
        """

        if self.failures:
            first = self.failures[0]
            raise CensusMismatch(first.name, first.expected, first.found)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "ok": c.ok, "expected": _plain(c.expected), "found": _plain(c.found)}
                for c in self.checks
            ],
        }

    def to_csv(self) -> str:
        lines = ["check,ok"]
        lines += [f"{c.name},{str(c.ok).lower()}" for c in self.checks]
        return "\n".join(lines) + "\n"

    def summary(self) -> None:
        print(f"## {self.title}: {'pass' if self.passed else 'FAIL'}")
        headers = ["Check", "Expected", "Found", "Ok"]
        table = [[c.name, c.expected, c.found, "yes" if c.ok else "NO"] for c in self.checks]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, CoverClass):
        return str(value)
    return value


def verify_tables(
    max_order: int = 7,
    averaged: tuple[int, ...] = (5,),
    *,
    workers: int = 1,
    budget: SearchBudget | None = None,
) -> VerificationReport:
    """
    Recompute the Z_n census rows up to `max_order` (with their relations and the Sylow 2-subgroup
    predictions) and the class-averaged census for each order in `averaged`.
    """

    report = VerificationReport("Census tables")
    for n in range(5, min(max_order, MAX_TABLE_ORDER) + 1):
        group = GroupSpec((n,))
        result = census(cayley_table(group), source=str(group), budget=budget)
        report.add(f"{group} q", ZN_CENSUS[n], result.q)
        report.add(f"{group} relations failing", [], verify_relations(cayley_table(group), result=result).failures)
        prediction = abelian_prediction(group)
        report.add(f"{group} predicted zeros", True, prediction.check(result))
    for n in averaged:
        if n not in AVERAGED_CENSUS:
            logger.warning(f"No reference row for the averaged census of order {n}, skipped")
            continue
        average, minimum, maximum = AVERAGED_CENSUS[n]
        result = averaged_census(n, workers=workers, budget=budget)
        report.add(f"order {n} average", average, result.rounded)
        report.add(f"order {n} minimum", minimum, result.minimum)
        report.add(f"order {n} maximum", maximum, result.maximum)
    return report


def _deficit2_pts(square: LatinSquare, cover: EntrySet) -> list[PartialTransversal]:
    out = []
    for subset in itertools.combinations(cover, square.n - 2):
        if is_partial_transversal(EntrySet(square, subset)):
            out.append(PartialTransversal(square, subset))
    return out


def verify_figures() -> VerificationReport:
    """
    Check the stated properties of every bundled figure square, cover and partial transversal.
    """

    report = VerificationReport("Figure fixtures")

    square, left = load_cover("fig1_left.pt")
    pt = PartialTransversal.from_entry_set(left)
    report.add("fig1 left is a partial transversal", True, is_partial_transversal(left))
    report.add("fig1 left is maximal", False, pt.is_maximal())
    _, middle = load_cover("fig1_middle.pt")
    report.add("fig1 middle deficit", 0, PartialTransversal.from_entry_set(middle).deficit)
    _, right = load_cover("fig1_right.cover")
    report.add("fig1 right is an (n+1)-cover", (True, square.n + 1), (is_cover(right), len(right)))

    _, fig3 = load_cover("fig3.cover")
    parts = unique_partition(fig3)
    report.add("fig3 UR", ((1, 1, 4), (5, 5, 2)), tuple(tuple(e) for e in parts.UR))
    report.add("fig3 URCS", ((3, 3, 6),), tuple(tuple(e) for e in parts.URCS))

    for name, expected in (
        ("z8_g1", CoverClass.G1),
        ("z8_g2", CoverClass.G2),
        ("z8_g3", CoverClass.G3),
        ("z8_g5", CoverClass.G5),
        ("star3", CoverClass.G4),
    ):
        sq, cover = load_cover(f"{name}.cover")
        report.add(f"{name} class", expected, classify(sq, cover))
    sq, cover = load_cover("z8_g1.cover")
    report.add("z8_g1 deficit-1 partial transversals", 0, pts_in_cover(sq, cover, 1))

    sq, cover = load_cover("z10_g1.cover")
    report.add("z10_g1 class", CoverClass.G1, classify(sq, cover))
    report.add("z10_g1 deficit-1 partial transversals", 0, pts_in_cover(sq, cover, 1))
    deficit2 = _deficit2_pts(sq, cover)
    report.add("z10_g1 deficit-2 partial transversals", 8, len(deficit2))
    report.add("z10_g1 deficit-2 all maximal", True, all(pt.is_maximal() for pt in deficit2))

    for name in ("fig7_left", "fig7_right"):
        sq, partial = load_cover(f"{name}.pmc")
        cover = extend_partial_minimal_cover(sq, partial)
        report.add(f"{name} extends to a larger minimal cover", True, cover.is_minimal and len(cover) >= len(partial))

    _, maximal = load_cover("order6_maximal.pt")
    pt = PartialTransversal.from_entry_set(maximal)
    report.add("order6 maximal partial transversal", (1, True), (pt.deficit, pt.is_maximal()))

    switching = load_square("switching6.ls")
    _, g5 = load_cover("switching_g5.cover")
    exchanges = {(tuple(a), tuple(b)) for a, b in cover_switches(switching, g5, CoverClass.G3)}
    report.add("switching G5 to G3", True, ((2, 5, 0), (2, 0, 4)) in exchanges)

    white = load_square("white9.ls")
    report.add("white9 3x3 submatrices miss a symbol", True, submatrix_symbol_coverage(white, 3, 3).symbols < 9)
    return report


def verify_bounds(n: int, *, workers: int = 1, budget: SearchBudget | None = None) -> VerificationReport:
    """
    Check that no minimal cover of any order-n species exceeds the size bound, and that
    the bound is attained for n <= 5.
    """

    report = VerificationReport(f"Minimal cover bound, order {n}")
    result = bound_census(n, workers=workers, budget=budget)
    report.add(f"order {n} species above {result.bound}", 0, len(result.exceeding))
    if n <= 5:
        report.add(f"order {n} species below {result.bound}", 0, result.species - len(result.meeting))
    return report
