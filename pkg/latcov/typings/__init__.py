from __future__ import annotations

from .typings import Grid, GridLike, Permutation, Triple
