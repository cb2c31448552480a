from __future__ import annotations

import math
import re
from dataclasses import dataclass

from latcov.core.latin_square import LatinSquare


@dataclass(frozen=True, slots=True)
class GroupSpec:
    """
    A finite abelian group given as a direct product of cyclic groups Z_f.

    Elements are identified with their mixed-radix rank: the digits are the
    components, the first factor being the most significant.
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.factors or any(f < 1 for f in self.factors):
            raise ValueError(f"Invalid group factors {self.factors}")

    def __str__(self) -> str:
        return "x".join(f"Z{f}" for f in self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def digits(self, element: int) -> tuple[int, ...]:
        out = []
        for f in reversed(self.factors):
            element, d = divmod(element, f)
            out.append(d)
        return tuple(reversed(out))

    def rank(self, digits: tuple[int, ...]) -> int:
        element = 0
        for f, d in zip(self.factors, digits):
            element = element * f + d % f
        return element

    def add(self, a: int, b: int) -> int:
        return self.rank(tuple(x + y for x, y in zip(self.digits(a), self.digits(b))))

    @property
    def sylow2_factors(self) -> tuple[int, ...]:
        """
        The cyclic factors Z_{2^e} (e > 0) whose product is the Sylow 2-subgroup.
        """

        out = []
        for f in self.factors:
            power = f & -f
            if power > 1:
                out.append(power)
        return tuple(out)

    @property
    def sylow2_trivial(self) -> bool:
        return not self.sylow2_factors

    @property
    def sylow2_cyclic(self) -> bool:
        return len(self.sylow2_factors) == 1

    @property
    def element_sum(self) -> int:
        """
        The sum of all group elements.

        It is the identity unless the Sylow 2-subgroup is nontrivial cyclic, in which
        case it is the unique involution.
        """

        total = 0
        for element in range(self.order):
            total = self.add(total, element)
        return total


def cayley_table(group: GroupSpec) -> LatinSquare:
    n = group.order
    return LatinSquare(tuple(tuple(group.add(i, j) for j in range(n)) for i in range(n)))


_GROUP = re.compile(r"^Z(\d+)(?:[x*]Z(\d+))*$", re.IGNORECASE)


def parse_group(text: str) -> GroupSpec:
    """
    Parse a group description such as `Z6` or `Z2xZ2xZ2`.
    """

    text = text.strip().replace(" ", "")
    if not _GROUP.match(text):
        raise ValueError(f"Cannot parse group {text!r}")
    return GroupSpec(tuple(int(part) for part in re.findall(r"\d+", text)))
