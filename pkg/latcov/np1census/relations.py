from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any, NamedTuple

from tabulate import tabulate

from latcov.core.groups import GroupSpec, cayley_table
from latcov.exceptions import OddOrder, OrderTooSmall
from latcov.logger import logger
from latcov.np1census.census import CoverCensus, census

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare
    from latcov.utils import SearchBudget


def relation_checks(result: CoverCensus) -> dict[str, bool]:
    """
    Evaluate every counting identity, bound and congruence on a census.

    Raises:
        OrderTooSmall: the order is below 3.
    """

    n = result.order
    if n < 3:
        raise OrderTooSmall(n, 3)
    q1, q2, q3, q4, q5 = result.q
    qmin, q, t, p, pmax = result.qmin, result.total, result.t, result.p, result.pmax
    low = Fraction(2 * (qmin - q1), 3 * n - 4)
    high = Fraction(2 * (qmin - q1), 3 * n - 6)
    return {
        "pmax identity": 3 * (n - 1) * pmax == 2 * q2 + 3 * q3 + 3 * q5,
        "pmax lower bound": 0 <= low <= pmax,
        "pmax upper bound": pmax <= high <= Fraction(2 * qmin, 3 * n - 6),
        "p bound": p <= Fraction(2 * q + n * (n - 4) * t, 3 * n - 6),
        "q4 identity": q4 == n * (n - 1) * t,
        "q2 = 0 mod 3": q2 % 3 == 0,
        "pmax = 0 mod 4": pmax % 4 == 0,
        "2q2 = q3 + q5 mod 4": (2 * q2 - q3 - q5) % 4 == 0,
        "t even for even n": n % 2 == 1 or t % 2 == 0,
        "q2 = 0 implies q3 = q5 = 0": n < 5 or q2 != 0 or (q3 == 0 and q5 == 0),
    }


@dataclass(slots=True)
class RelationsReport:
    census: CoverCensus
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        out = self.census.to_dict()
        out["relations"] = dict(self.checks)
        return out

    def summary(self) -> None:
        self.census.summary()
        print("## Relations")
        headers = ["Relation", "Holds"]
        table = [[name, "yes" if ok else "NO"] for name, ok in self.checks.items()]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def verify_relations(
    square: LatinSquare,
    *,
    result: CoverCensus | None = None,
    source: str = "",
    budget: SearchBudget | None = None,
) -> RelationsReport:
    """
    Census the square (unless a census is given) and evaluate every relation on it.

    Raises:
        BudgetExceeded: the census expands more nodes than allowed.
        OrderTooSmall: the order is below 3.
    """

    result = result or census(square, source=source, budget=budget)
    report = RelationsReport(census=result, checks=relation_checks(result))
    if not report.all_pass:
        logger.warning(f"Relations failing for order {result.order} {source}: {report.failures}")
    return report


@dataclass(slots=True)
class AbelianPrediction:
    """
    What the Sylow 2-subgroup of an abelian group forces on its Cayley table's census.

    A nontrivial cyclic Sylow 2-subgroup forbids transversals, hence t = q4 = 0. Otherwise
    there is no maximal deficit-1 partial transversal, hence pmax = q2 = q3 = q5 = 0.
    """

    group: str
    sylow2: str
    zeros: tuple[str, ...]
    confirmed: bool | None = None

    def check(self, result: CoverCensus) -> bool:
        values = {"t": result.t, "pmax": result.pmax, "q2": result.q2, "q3": result.q3, "q4": result.q4, "q5": result.q5}
        self.confirmed = all(values[name] == 0 for name in self.zeros)
        return self.confirmed

    def to_dict(self) -> dict[str, Any]:
        return {"group": self.group, "sylow2": self.sylow2, "zeros": list(self.zeros), "confirmed": self.confirmed}

    def summary(self) -> None:
        print(f"## Prediction for {self.group}")
        headers = ["Sylow 2-subgroup", "Predicted zero", "Confirmed"]
        confirmed = "-" if self.confirmed is None else ("yes" if self.confirmed else "NO")
        print(tabulate([[self.sylow2, ", ".join(self.zeros), confirmed]], headers=headers, tablefmt="fancy_grid"))


def abelian_prediction(
    group: GroupSpec, *, check: bool = False, budget: SearchBudget | None = None
) -> AbelianPrediction:
    if group.sylow2_trivial:
        sylow2, zeros = "trivial", ("pmax", "q2", "q3", "q5")
    elif group.sylow2_cyclic:
        sylow2, zeros = "cyclic", ("t", "q4")
    else:
        sylow2, zeros = "non-cyclic", ("pmax", "q2", "q3", "q5")
    prediction = AbelianPrediction(group=str(group), sylow2=sylow2, zeros=zeros)
    if check:
        prediction.check(census(cayley_table(group), source=str(group), budget=budget))
    return prediction


class ConjectureCheck(NamedTuple):
    holds: bool
    t: int
    qmin: int


def conjecture_tq(
    square: LatinSquare, *, result: CoverCensus | None = None, budget: SearchBudget | None = None
) -> ConjectureCheck:
    """
    Evaluate t = 2 qmin (mod 4) for a square of even order.

    Raises:
        OddOrder: the order is odd.
    """

    if square.n % 2:
        raise OddOrder(square.n)
    result = result or census(square, budget=budget)
    return ConjectureCheck((result.t - 2 * result.qmin) % 4 == 0, result.t, result.qmin)
