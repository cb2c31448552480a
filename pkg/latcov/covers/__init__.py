from __future__ import annotations

from .bounds import min_cover_size, mu_bound
from .conversion import cover_to_pt, pt_to_cover
from .cover import (
    Cover,
    UniquePartition,
    cross_cover,
    is_cover,
    is_minimal_cover,
    redundant_entries,
    strip_redundancies,
    unique_partition,
)
from .enumeration import count_covers, cover_cells, enumerate_covers
from .extension import extend_partial_minimal_cover
from .large import LargeCoverTrace, large_minimal_cover
from .minimal_search import (
    EXACT_SPECTRUM_MAX_ORDER,
    SpectrumReport,
    largest_minimal_cover,
    max_minimal_cover_size,
    minimal_cover_spectrum,
)
from .potential import NormalizeOutcome, PotentialCover, normalize_potential_cover
from .through_entry import minimal_np1_through_entry
