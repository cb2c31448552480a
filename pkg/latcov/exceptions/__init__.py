from __future__ import annotations

from .base import LatcovError
from .constructions import (
    BadParameters,
    InvalidBundle,
    MatchingFailed,
    MultiplicityViolation,
    NotATransversal,
    OutOfRange,
    Unsupported,
)
from .covers import (
    ForcedEntryNotInCover,
    NotACover,
    NotAPartialTransversal,
    NotAPotentialCover,
    NotMaximal,
    NotMinimal,
    OddOrder,
    OrderTooSmall,
    RedundantEntryPresent,
    TooSmall,
    UnexpectedGraph,
    WrongSize,
)
from .search import BudgetExceeded, NotFound, SamplingFailed
from .square import (
    ColRepeat,
    DegreeMismatch,
    EntryNotInSquare,
    FormatError,
    NotAnIntercalate,
    NotSquare,
    RowRepeat,
    SymbolOutOfRange,
)
from .verification import CensusMismatch
