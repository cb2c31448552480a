from __future__ import annotations

from latcov.exceptions.base import LatcovError


class NotACover(LatcovError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(f"Entry set of size {size} leaves some line unrepresented")


class NotAPartialTransversal(LatcovError):
    def __init__(self, entries: tuple):
        self.entries = entries
        super().__init__(f"Entries {entries} share a line")


class NotAPotentialCover(LatcovError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Not a potential cover: {reason}")


class RedundantEntryPresent(LatcovError):
    def __init__(self, entry: tuple[int, int, int]):
        self.entry = entry
        super().__init__(f"Entry {tuple(entry)} is redundant")


class ForcedEntryNotInCover(LatcovError):
    def __init__(self, entry: tuple[int, int, int]):
        self.entry = entry
        super().__init__(f"Forced entry {tuple(entry)} is not a member of the cover")


class NotMinimal(LatcovError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(f"Cover of size {size} is not minimal")


class TooSmall(LatcovError):
    def __init__(self, size: int, required: int):
        self.size = size
        self.required = required
        super().__init__(f"Size {size} is below the required {required}")


class OrderTooSmall(LatcovError):
    def __init__(self, order: int, required: int):
        self.order = order
        self.required = required
        super().__init__(f"Order {order} is below the supported minimum {required}")


class WrongSize(LatcovError):
    def __init__(self, size: int, expected: int):
        self.size = size
        self.expected = expected
        super().__init__(f"Expected {expected} entries, got {size}")


class UnexpectedGraph(LatcovError):
    """Raised when an (n+1)-cover induces none of the five graphs; signals a bug."""

    def __init__(self, degrees: tuple[int, ...]):
        self.degrees = degrees
        super().__init__(f"Induced graph with degree sequence {degrees} matches no class")


class NotMaximal(LatcovError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(f"Partial transversal of size {size} is not maximal")


class OddOrder(LatcovError):
    def __init__(self, order: int):
        self.order = order
        super().__init__(f"Order {order} is odd")
