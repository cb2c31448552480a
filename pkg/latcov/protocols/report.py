from __future__ import annotations

from typing import Any, Protocol


class Report(Protocol):
    """
    A computation result the CLI can print as a table or serialize as JSON.
    """

    def summary(self) -> None:
        ...

    def to_dict(self) -> dict[str, Any]:
        ...
