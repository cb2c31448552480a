from __future__ import annotations

import json
from collections.abc import Iterable, Iterator
from importlib import resources
from pathlib import Path
from typing import Any

from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.core.latin_square import LatinSquare, validate
from latcov.exceptions import FormatError, LatcovError

SCHEMA = 1


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def _parse_block(lines: list[tuple[int, str]], source: str) -> tuple[LatinSquare, int]:
    """
    Parse one square from the head of `lines`; return it with the number of lines consumed.
    """

    if not lines:
        raise FormatError(source, "missing order line")
    number, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise FormatError(source, f"line {number}: expected the order, got {head!r}") from None
    if n < 1:
        raise FormatError(source, f"line {number}: order must be positive")
    if len(lines) < n + 1:
        raise FormatError(source, f"expected {n} rows, found {len(lines) - 1}")

    grid = []
    for number, line in lines[1 : n + 1]:
        try:
            grid.append([int(x) for x in line.split()])
        except ValueError:
            raise FormatError(source, f"line {number}: non-integer symbol") from None
    try:
        return validate(grid), n + 1
    except LatcovError as exc:
        raise FormatError(source, str(exc)) from exc


def parse_ls(text: str, source: str = "<string>") -> LatinSquare:
    """
    Parse the `.ls` text format: the order on the first line, then n rows of n symbols.
    Lines starting with `#` are comments; anything after the last row is rejected.
    """

    lines = list(_content_lines(text))
    square, used = _parse_block(lines, source)
    if used != len(lines):
        raise FormatError(source, f"line {lines[used][0]}: trailing content after the square")
    return square


def format_ls(square: LatinSquare, comment: str | None = None) -> str:
    head = f"# {comment}\n" if comment else ""
    return f"{head}{square.n}\n{square}\n"


def read_ls(path: str | Path) -> LatinSquare:
    path = Path(path)
    return parse_ls(path.read_text(encoding="utf-8"), str(path))


def write_ls(square: LatinSquare, path: str | Path, comment: str | None = None) -> Path:
    path = Path(path)
    path.write_text(format_ls(square, comment), encoding="utf-8", newline="\n")
    return path


def read_ls_blocks(path: str | Path) -> list[LatinSquare]:
    """
    Read a checkpoint file of consecutive `.ls` blocks.
    """

    path = Path(path)
    lines = list(_content_lines(path.read_text(encoding="utf-8")))
    squares = []
    while lines:
        square, used = _parse_block(lines, str(path))
        squares.append(square)
        lines = lines[used:]
    return squares


def write_ls_blocks(squares: Iterable[LatinSquare], path: str | Path, header: str) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {header}\n")
        for square in squares:
            fh.write(format_ls(square))
    return path


def entries_from_json(square: LatinSquare, raw: Iterable[Iterable[int]], source: str = "<json>") -> EntrySet:
    entries = []
    for item in raw:
        triple = tuple(int(x) for x in item)
        if len(triple) != 3 or not square.contains(triple):
            raise FormatError(source, f"entry {list(triple)} does not belong to the square")
        entries.append(Entry(*triple))
    return EntrySet(square, entries)


def dump_json(payload: dict[str, Any]) -> str:
    """
    Serialize a report deterministically, stamping the schema version.
    """

    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2) + "\n"


def read_cover(path: str | Path) -> tuple[LatinSquare, EntrySet]:
    """
    Read a `.cover` JSON file: {"square": [[...]], "entries": [[r, c, s], ...]}.
    """

    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        square = validate(raw["square"])
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(str(path), f"malformed cover file ({exc})") from exc
    except LatcovError as exc:
        raise FormatError(str(path), str(exc)) from exc
    return square, entries_from_json(square, raw.get("entries", []), str(path))


def write_cover(entries: EntrySet, path: str | Path, **extra: Any) -> Path:
    path = Path(path)
    payload = {
        "order": entries.n,
        "size": len(entries),
        "square": [list(row) for row in entries.square.grid],
        "entries": entries.to_list(),
        **extra,
    }
    path.write_text(dump_json(payload), encoding="utf-8", newline="\n")
    return path


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("latcov.fixtures").joinpath(name)))


def load_square(name: str) -> LatinSquare:
    """
    Load a bundled `.ls` fixture by file name.
    """

    return read_ls(fixture_path(name))


def load_cover(name: str) -> tuple[LatinSquare, EntrySet]:
    """
    Load a bundled `.cover` fixture by file name.
    """

    return read_cover(fixture_path(name))


def load_fixture(name: str) -> LatinSquare | tuple[LatinSquare, EntrySet]:
    """
    Load a bundled fixture: a square for `.ls` files, a (square, entries) pair otherwise.
    """

    if name.endswith(".ls"):
        return load_square(name)
    return load_cover(name)
