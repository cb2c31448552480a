from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.covers.enumeration import count_covers, cover_cells
from latcov.exceptions import CensusMismatch, NotMaximal, OrderTooSmall
from latcov.logger import logger
from latcov.np1census.cover_class import CoverClass, _classify_cells
from latcov.transversals.partial_transversal import PartialTransversal
from latcov.transversals.search import count_pts
from latcov.utils import SearchBudget, resolve

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare


@dataclass(frozen=True, slots=True)
class CoverCensus:
    """
    Counts of (n+1)-covers by induced graph, with the transversal counts they are tied to.

    Attributes:
        q: The number of (n+1)-covers inducing G1, ..., G5.
        t: The number of transversals.
        pmax: The number of maximal partial transversals of deficit 1.
        p: The number of partial transversals of deficit 1.
    """

    order: int
    q: tuple[int, int, int, int, int]
    t: int
    pmax: int
    p: int
    source: str = ""

    @property
    def q1(self) -> int:
        return self.q[0]

    @property
    def q2(self) -> int:
        return self.q[1]

    @property
    def q3(self) -> int:
        return self.q[2]

    @property
    def q4(self) -> int:
        return self.q[3]

    @property
    def q5(self) -> int:
        return self.q[4]

    @property
    def qmin(self) -> int:
        """The number of minimal (n+1)-covers: every class but G4."""
        return self.q1 + self.q2 + self.q3 + self.q5

    @property
    def total(self) -> int:
        return sum(self.q)

    @property
    def q4_identity_ok(self) -> bool:
        n = self.order
        return self.q4 == n * (n - 1) * self.t

    @property
    def divisible_by_three(self) -> bool:
        return all(x % 3 == 0 for x in (*self.q, self.t))

    @property
    def q5_zero(self) -> bool:
        return self.q5 == 0

    def by_class(self) -> dict[CoverClass, int]:
        return dict(zip(CoverClass, self.q))

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "source": self.source,
            "q": list(self.q),
            "qmin": self.qmin,
            "total": self.total,
            "q4_identity_ok": self.q4_identity_ok,
            "t": self.t,
            "pmax": self.pmax,
            "p": self.p,
            "divisible_by_three": self.divisible_by_three,
            "q5_zero": self.q5_zero,
        }

    def summary(self) -> None:
        print(f"## (n+1)-cover census, order {self.order} {self.source}".rstrip())
        headers = ["q1", "q2", "q3", "q4", "q5", "qmin", "q", "t", "pmax", "p"]
        table = [[*self.q, self.qmin, self.total, self.t, self.pmax, self.p]]
        print(tabulate(table, headers=headers, tablefmt="fancy_grid"))


def check_census(census: CoverCensus) -> None:
    """
    Assert the identities tying the class counts to the transversal counts.

    Raises:
        CensusMismatch: an identity fails.
    """

    n = census.order
    if not census.q4_identity_ok:
        raise CensusMismatch("q4 = n(n-1)t", n * (n - 1) * census.t, census.q4)
    if census.p != census.pmax + n * census.t:
        raise CensusMismatch("p = pmax + nt", census.pmax + n * census.t, census.p)
    lhs = 3 * (n - 1) * census.pmax
    rhs = 2 * census.q2 + 3 * census.q3 + 3 * census.q5
    if lhs != rhs:
        raise CensusMismatch("3(n-1)pmax = 2q2 + 3q3 + 3q5", lhs, rhs)


def census(square: LatinSquare, *, source: str = "", budget: SearchBudget | None = None) -> CoverCensus:
    """
    Count the (n+1)-covers of the square by class, along with t, pmax and p.

    The result is checked against its identities before being returned.

    Raises:
        BudgetExceeded: the searches expand more nodes than allowed.
        CensusMismatch: an identity fails.
    """

    n = square.n
    budget = resolve(budget)
    counts: Counter[CoverClass] = Counter()
    for cells in cover_cells(square, n + 1, budget=budget):
        counts[_classify_cells(square, cells)] += 1
    t = count_pts(square, 0, budget=budget)
    p = count_pts(square, 1, budget=budget)
    pmax = count_pts(square, 1, maximal_only=True, budget=budget)
    q = tuple(counts[cls] for cls in CoverClass)
    result = CoverCensus(order=n, q=q, t=t, pmax=pmax, p=p, source=source)  # type: ignore[arg-type]
    check_census(result)
    logger.info(f"Census of order {n} {source}: q={list(q)}, t={t}, pmax={pmax}, p={p} ({budget.spent} nodes)")
    return result


def cover_extensions_of_pt(
    square: LatinSquare, pt: PartialTransversal, *, budget: SearchBudget | None = None
) -> int:
    """
    Count the (n+1)-covers containing a maximal partial transversal.

    The count depends only on the deficit d: n(n-1) for d = 0, 3(n-1) for d = 1, 8 for d = 2
    and none beyond.

    Raises:
        OrderTooSmall: the order is below 3.
        NotMaximal: the partial transversal extends.
    """

    n = square.n
    if n < 3:
        raise OrderTooSmall(n, 3)
    if not pt.is_maximal():
        raise NotMaximal(len(pt))
    if pt.deficit >= 3:
        return 0
    return count_covers(square, n + 1, base=pt, budget=budget)
