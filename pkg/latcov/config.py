from __future__ import annotations

from typing import Literal, TypedDict

OutputFormat = Literal["json", "csv", "text"]


class RunConfig(TypedDict):
    subcommand: str
    inputs: list[str]
    seed: int
    node_budget: int | None
    time_budget: float | None
    workers: int
    output_format: OutputFormat
    output: str | None


def default_run_config(subcommand: str = "analyze") -> RunConfig:
    return RunConfig(
        subcommand=subcommand,
        inputs=[],
        seed=0,
        node_budget=None,
        time_budget=None,
        workers=1,
        output_format="json",
        output=None,
    )


class LargeCoverConfig(TypedDict):
    """
    Tunables of the randomized large minimal cover procedure.

    Attributes:
        retries: random selections tried per stage before falling back to a greedy choice.
        threshold_factor: a column set is accepted when at most
            `threshold_factor * n ** (1/2 + 2 * eps)` symbols remain uncovered.
        size_constant: the row and column sets drawn are of size `size_constant * psi`.
        deficit_constant: the expected shortfall 3n - |cover| is at most `deficit_constant * psi`.
            Runs falling further short are logged at WARNING.
    """

    retries: int
    threshold_factor: float
    size_constant: float
    deficit_constant: float


def default_large_cover_config() -> LargeCoverConfig:
    return LargeCoverConfig(retries=50, threshold_factor=4.0, size_constant=1.0, deficit_constant=4.0)
