from __future__ import annotations

from .census import CoverCensus, census, check_census, cover_extensions_of_pt
from .cover_class import (
    CoverClass,
    classify,
    cover_switches,
    every_entry_in_deficit2_pt,
    pt_count_formula,
    pts_in_cover,
)
from .relations import (
    AbelianPrediction,
    ConjectureCheck,
    RelationsReport,
    abelian_prediction,
    conjecture_tq,
    relation_checks,
    verify_relations,
)
