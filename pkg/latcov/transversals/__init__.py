from __future__ import annotations

from .maximal import DeficitCensus, deficit_census_sample, min_maximal_pt_size, shortest_maximal_pt
from .partial_transversal import PartialTransversal, is_maximal, is_partial_transversal
from .search import (
    EnumerationMode,
    count_pts,
    count_transversals,
    enumerate_pts,
    find_pt,
    min_deficit,
    transversal_avoiding,
    transversal_through,
)
