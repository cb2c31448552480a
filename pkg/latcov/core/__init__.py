from __future__ import annotations

from .entry import Entry, Line, LineKind, all_lines
from .entry_set import EntrySet
from .groups import GroupSpec, cayley_table, parse_group
from .isotopism import Conjugate, Isotopism, conjugate, transform
from .latin_square import LatinSquare, count_intercalates, cyclic_square, turn_intercalate, validate
from .sampling import random_square
from .submatrix import SubmatrixCoverage, submatrix_symbol_coverage
