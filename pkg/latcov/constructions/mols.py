from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import galois
import numpy as np

from latcov.core.latin_square import LatinSquare
from latcov.exceptions import Unsupported
from latcov.logger import logger


@dataclass(frozen=True, slots=True)
class MolsPair:
    """
    Two orthogonal Latin squares of order t, normalized so that A[r][r] = 0 and B[r][r] = r.
    """

    order: int
    a: LatinSquare
    b: LatinSquare

    @property
    def is_orthogonal(self) -> bool:
        return is_orthogonal(self.a, self.b)

    def to_dict(self) -> dict[str, Any]:
        return {"order": self.order, "a": [list(row) for row in self.a.grid], "b": [list(row) for row in self.b.grid]}


def is_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    """
    Whether superimposing the squares yields every ordered pair of symbols exactly once.
    """

    if a.n != b.n:
        return False
    pairs = {(x, y) for row_a, row_b in zip(a.grid, b.grid) for x, y in zip(row_a, row_b)}
    return len(pairs) == a.n * a.n


def _odd_pair(t: int) -> tuple[np.ndarray, np.ndarray]:
    r, c = np.indices((t, t))
    return (c - r) % t, (2 * c - r) % t


def _binary_field_pair(t: int) -> tuple[np.ndarray, np.ndarray]:
    """
    A = r + c and B = (lambda + 1)^-1 (lambda r + c) over GF(t), lambda primitive.
    """

    field = galois.GF(t)
    x = field(np.arange(t))
    lam = field.primitive_element
    scale = (lam + field(1)) ** -1
    a = x[:, None] + x[None, :]
    b = scale * (lam * x[:, None] + x[None, :])
    return a.view(np.ndarray).astype(np.int64), b.view(np.ndarray).astype(np.int64)


def _product(
    first: tuple[np.ndarray, np.ndarray], second: tuple[np.ndarray, np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """
    Direct product of two pairs; row, column and symbol (x, y) flatten to x * t2 + y.
    """

    t1, t2 = first[0].shape[0], second[0].shape[0]
    out = []
    for x, y in zip(first, second):
        out.append((x[:, None, :, None] * t2 + y[None, :, None, :]).reshape(t1 * t2, t1 * t2))
    return out[0], out[1]


def mols(t: int) -> MolsPair:
    """
    Return a pair of orthogonal Latin squares of order t.

    Odd t uses A = c - r and B = 2c - r (mod t). A power of two uses field arithmetic
    over GF(t). Other even t is the direct product of the two when t is divisible by 4.

    Raises:
        Unsupported: t < 3, or t = 2 (mod 4).
    """

    if t < 3 or t % 4 == 2:
        raise Unsupported("t", t)
    power = t & -t
    odd = t // power
    pair: tuple[np.ndarray, np.ndarray] | None = None
    if power > 1:
        pair = _binary_field_pair(power)
    if odd > 1:
        pair = _odd_pair(odd) if pair is None else _product(pair, _odd_pair(odd))
    assert pair is not None
    out = MolsPair(order=t, a=LatinSquare.from_array(pair[0]), b=LatinSquare.from_array(pair[1]))
    logger.debug(f"Built an orthogonal pair of order {t}")
    return out
