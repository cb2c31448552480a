from __future__ import annotations

from collections.abc import Sequence

Triple = tuple[int, int, int]
Grid = tuple[tuple[int, ...], ...]
GridLike = Sequence[Sequence[int]]
Permutation = tuple[int, ...]
