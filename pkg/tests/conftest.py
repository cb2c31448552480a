from __future__ import annotations

import pytest

from latcov.core import LatinSquare, cayley_table, parse_group
from latcov.core.io import load_cover, load_square
from latcov.logger import logger


@pytest.fixture
def fig1() -> LatinSquare:
    return load_square("fig1.ls")


@pytest.fixture
def white9() -> LatinSquare:
    return load_square("white9.ls")


@pytest.fixture
def z8_covers():
    return {name: load_cover(f"{name}.cover") for name in ("z8_g1", "z8_g2", "z8_g3", "z8_g5")}


@pytest.fixture
def z10_cover():
    return load_cover("z10_g1.cover")


@pytest.fixture
def group_table():
    def build(spec: str) -> LatinSquare:
        return cayley_table(parse_group(spec))

    return build


@pytest.fixture
def logged_warnings():
    messages: list[str] = []
    sink_id = logger.add(messages.append, level="WARNING", filter="latcov", format="{message}")
    yield messages
    logger.remove(sink_id)
