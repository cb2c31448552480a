from __future__ import annotations

from latcov.exceptions.base import LatcovError


class Unsupported(LatcovError):
    exit_code = 4

    def __init__(self, parameter: str, value: int):
        self.parameter = parameter
        self.value = value
        super().__init__(f"Unsupported {parameter}={value}")


class BadParameters(LatcovError):
    exit_code = 4

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class MultiplicityViolation(LatcovError):
    def __init__(self, symbol: int, found: int, required: int):
        self.symbol = symbol
        self.found = found
        self.required = required
        super().__init__(f"Symbol {symbol} occurs {found} times, at least {required} required")


class MatchingFailed(LatcovError):
    def __init__(self, stage: str, index: int):
        self.stage = stage
        self.index = index
        super().__init__(f"No perfect matching while filling {stage} {index}")


class NotATransversal(LatcovError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(f"Entry set of size {size} is not a transversal")


class OutOfRange(LatcovError):
    exit_code = 4

    def __init__(self, value: int, low: int, high: int):
        self.value = value
        self.low = low
        self.high = high
        super().__init__(f"{value} outside [{low}, {high}]")


class InvalidBundle(LatcovError):
    exit_code = 2

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid construction bundle: {reason}")
