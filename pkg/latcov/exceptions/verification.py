from __future__ import annotations

from latcov.exceptions.base import LatcovError


class CensusMismatch(LatcovError):
    exit_code = 5

    def __init__(self, relation: str, expected: object, found: object):
        self.relation = relation
        self.expected = expected
        self.found = found
        super().__init__(f"{relation}: expected {expected}, found {found}")
