from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from latcov.constructions.mols import mols
from latcov.core.entry import Entry
from latcov.core.entry_set import EntrySet
from latcov.core.io import dump_json, format_ls, parse_ls
from latcov.core.isotopism import Isotopism
from latcov.core.latin_square import LatinSquare, validate
from latcov.covers.cover import Cover, is_minimal_cover, unique_partition
from latcov.covers.through_entry import minimal_np1_through_entry
from latcov.exceptions import InvalidBundle, LatcovError, OutOfRange, Unsupported
from latcov.logger import logger
from latcov.transversals.partial_transversal import is_partial_transversal

if TYPE_CHECKING:
    from latcov.utils import SearchBudget

_T2_SQUARE = (
    (5, 2, 3, 0, 4, 1),
    (1, 4, 0, 5, 2, 3),
    (4, 0, 2, 3, 1, 5),
    (3, 5, 4, 1, 0, 2),
    (0, 1, 5, 2, 3, 4),
    (2, 3, 1, 4, 5, 0),
)
_T2_COVER = (
    (0, 0, 5), (1, 1, 4), (2, 0, 4), (3, 1, 5), (4, 0, 0), (4, 1, 1),
    (4, 2, 5), (4, 5, 4), (5, 0, 2), (5, 1, 3), (5, 3, 4), (5, 4, 5),
)  # fmt: skip


@dataclass(frozen=True, slots=True)
class ConstructionBundle:
    """
    A square of order t^2 + t with a transversal T and a minimal cover C of size 3t^2
    whose unique parts U_R, U_C and U_S have t^2 entries each, t of U_R lying on T.
    """

    t: int
    square: LatinSquare
    transversal: tuple[Entry, ...]
    cover: tuple[Entry, ...]

    @property
    def order(self) -> int:
        return self.square.n

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "order": self.order,
            "square": format_ls(self.square),
            "transversal": [list(e) for e in self.transversal],
            "cover": [list(e) for e in self.cover],
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any], source: str = "<bundle>") -> ConstructionBundle:
        try:
            square = parse_ls(raw["square"], source)
            t = int(raw["t"])
            transversal = tuple(Entry(*map(int, e)) for e in raw["transversal"])
            cover = tuple(Entry(*map(int, e)) for e in raw["cover"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidBundle(f"{source}: malformed ({exc})") from exc
        except LatcovError as exc:
            raise InvalidBundle(f"{source}: {exc}") from exc
        return cls(t=t, square=square, transversal=transversal, cover=cover)


def verify_bundle(bundle: ConstructionBundle) -> None:
    """
    Check every bundle invariant.

    Raises:
        InvalidBundle: an invariant fails.
    """

    t, square = bundle.t, bundle.square
    n = t * t + t
    if t < 2 or square.n != n:
        raise InvalidBundle(f"order {square.n} is not t^2 + t for t = {t}")
    for e in (*bundle.transversal, *bundle.cover):
        if not square.contains(e):
            raise InvalidBundle(f"entry {tuple(e)} does not belong to the square")
    transversal = EntrySet(square, bundle.transversal)
    if len(transversal) != n or not is_partial_transversal(transversal):
        raise InvalidBundle("the transversal is not a transversal")
    cover = EntrySet(square, bundle.cover)
    if len(cover) != 3 * t * t or not is_minimal_cover(cover):
        raise InvalidBundle(f"the cover is not a minimal cover of size {3 * t * t}")
    part = unique_partition(cover)
    sizes = part.sizes()
    if any(sizes[key] != t * t for key in ("UR", "UC", "US")) or len(part) != 3 * t * t:
        raise InvalidBundle(f"unique parts have sizes {sizes}")
    if sum(1 for e in part.UR if e in transversal) != t:
        raise InvalidBundle(f"U_R does not meet the transversal in {t} entries")
    if len({e.row for e in part.US}) != t or len({e.col for e in part.US}) != t:
        raise InvalidBundle("U_S is not a t x t submatrix")


def save_bundle(bundle: ConstructionBundle, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dump_json(bundle.to_dict()), encoding="utf-8", newline="\n")
    return path


def load_bundle(path: str | Path) -> ConstructionBundle:
    """
    Read and validate a `.bundle` file.

    Raises:
        InvalidBundle: the file is malformed or an invariant fails.
    """

    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InvalidBundle(f"{path}: {exc}") from exc
    bundle = ConstructionBundle.from_dict(raw, str(path))
    verify_bundle(bundle)
    return bundle


def _square(t: int) -> np.ndarray:
    pair = mols(t)
    a, b = pair.a.array, pair.b.array
    n = t * t + t
    out = np.empty((n, n), dtype=np.int64)
    for alpha in range(t + 1):
        for beta in range(t + 1):
            block = ((a - (alpha + beta + 1)) % (t + 1)) * t + b
            out[alpha * t : (alpha + 1) * t, beta * t : (beta + 1) * t] = block
    return out


def _transversal_cells(t: int) -> list[tuple[int, int]]:
    n = t * t + t
    if t % 2 == 0:
        return [(i, i) for i in range(n)]
    cells = []
    for alpha in range(t + 1):
        for r in range(t):
            i = alpha * t + r
            if alpha < (t + 1) // 2:
                cells.append((i, i))
            elif r < t - 1:
                cells.append((i, i + 1))
            else:
                cells.append((i, alpha * t))
    return cells


def build_t2t(t: int, bundle_path: str | Path | None = None) -> ConstructionBundle:
    """
    Build a square of order t^2 + t with a minimal cover of size 3t^2 and a transversal
    as required by `cover_family`.

    From an orthogonal pair (A, B) of order t, cell (alpha t + r, beta t + c) holds the
    symbol (A[r][c] - (alpha + beta + 1) mod t + 1, B[r][c]), flattened to u t + v. The cover
    is the bottom-left t x t block together with the entries holding a symbol (t, .) in the
    first t columns or the last t rows. t = 2 uses a fixed square of order 6; t = 6 has no
    orthogonal pair and is read from `bundle_path`.

    Raises:
        Unsupported: t < 2, or no construction exists for t (t = 6 without a bundle file).
        InvalidBundle: the result (or the supplied file) fails an invariant.
    """

    if t == 6 and bundle_path is not None:
        bundle = load_bundle(bundle_path)
        if bundle.t != 6:
            raise InvalidBundle(f"{bundle_path}: holds t = {bundle.t}")
        return bundle
    if t < 2 or t == 6:
        raise Unsupported("t", t)

    if t == 2:
        square = LatinSquare(_T2_SQUARE)
        transversal = tuple(square.entry(i, i) for i in range(6))
        bundle = ConstructionBundle(t=2, square=square, transversal=transversal, cover=tuple(Entry(*e) for e in _T2_COVER))
    else:
        square = validate(_square(t))
        n = square.n
        extra = {t * t + v for v in range(t)}
        bottom = range(t * t, n)
        cells = {(t * t + r, c) for r in range(t) for c in range(t)}
        cells |= {(r, c) for r in range(n) for c in range(t) if square[r, c] in extra}
        cells |= {(r, c) for r in bottom for c in range(n) if square[r, c] in extra}
        cover = tuple(sorted(square.entry(r, c) for r, c in cells))
        transversal = tuple(square.entry(r, c) for r, c in _transversal_cells(t))
        bundle = ConstructionBundle(t=t, square=square, transversal=transversal, cover=cover)

    verify_bundle(bundle)
    logger.info(f"Built the order-{bundle.order} square with a minimal cover of size {len(bundle.cover)}")
    return bundle


def _normalizer(bundle: ConstructionBundle) -> Isotopism:
    """
    The isotopism after which T is the main diagonal, U_S is the bottom-left t x t block,
    U_R meets T in its first t entries and the bottom-left entry holds t^2 - 1.
    """

    t, square = bundle.t, bundle.square
    part = unique_partition(EntrySet(square, bundle.cover))
    bottom_rows = {e.row for e in part.US}
    on_ur = set(part.UR)
    first = sorted(e for e in bundle.transversal if e in on_ur)
    bottom = sorted(e for e in bundle.transversal if e.row in bottom_rows)
    middle = sorted(e for e in bundle.transversal if e not in on_ur and e.row not in bottom_rows)
    by_symbol = {e.sym: e for e in bundle.transversal}
    middle_set = set(middle)

    corner = next(
        (b, f, by_symbol[square[b.row, f.col]])
        for b in bottom
        for f in first
        if by_symbol[square[b.row, f.col]] in middle_set
    )
    b, f, m = corner
    first.remove(f)
    middle.remove(m)
    bottom.remove(b)
    ordered = [f, *first, *middle, m, *bottom, b]

    n = t * t + t
    rows, cols, syms = [0] * n, [0] * n, [0] * n
    for k, (r, c, s) in enumerate(ordered):
        rows[r], cols[c], syms[s] = k, k, k
    return Isotopism(tuple(rows), tuple(cols), tuple(syms))


def _family_windows(t: int, c: int) -> tuple[range, range]:
    top = 3 * t * t
    if c > top - t:
        return range(t * t, t * t + (top - c)), range(0)
    if c % 2 == 0:
        return range(t * t, t * t + t), range(t, t + (top - t - c) // 2)
    return range(t * t, t * t + t - 1), range(t, t + (top - t - c + 1) // 2)


def cover_family(bundle: ConstructionBundle, c: int, *, budget: SearchBudget | None = None) -> Cover:
    """
    Return a minimal cover of size c of the bundle's square, for t^2 + t <= c <= 3t^2.

    c = t^2 + t gives the transversal and c = t^2 + t + 1 a minimal (n+1)-cover through an
    entry off it. Larger sizes add diagonal entries (i, i, i) of the normalized square for
    i in X (last t rows) and i in Y (middle rows) and delete what they make redundant:
    the U_C and U_S entries of column and symbol i for i in X, the U_R, U_C and U_S entries
    of row, column and symbol i for i in Y, removing |X| + 2|Y| entries in all.

    Raises:
        OutOfRange: c is outside [t^2 + t, 3t^2].
    """

    t, square = bundle.t, bundle.square
    n = square.n
    if not n <= c <= 3 * t * t:
        raise OutOfRange(c, n, 3 * t * t)
    if c == n:
        return Cover(square, bundle.transversal)
    if c == n + 1:
        on_t = set(bundle.transversal)
        entry = next(e for e in square.entries() if e not in on_t)
        return minimal_np1_through_entry(square, bundle.transversal, entry, budget=budget)

    iso = _normalizer(bundle)
    normal = iso.apply(square)
    cover = EntrySet(normal, (iso.apply_entry(e) for e in bundle.cover))
    part = unique_partition(cover)
    x, y = _family_windows(t, c)
    x_set, y_set = set(x), set(y)

    removed = {e for e in part.UC if e.col in x_set or e.col in y_set}
    removed |= {e for e in part.US if e.sym in x_set or e.sym in y_set}
    removed |= {e for e in part.UR if e.row in y_set}
    for e in removed:
        cover.discard(e)
    for i in (*x, *y):
        cover.add(Entry(i, i, i))

    if len(cover) != c or not is_minimal_cover(cover):
        raise InvalidBundle(f"family member of size {c} came out with size {len(cover)}, not a minimal cover")
    back = iso.inverse()
    return Cover(square, (back.apply_entry(e) for e in cover))
