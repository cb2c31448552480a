from __future__ import annotations

from .canonical import autotopism_count, canonical_isotopy_form, class_size, cycle_type, species_id
from .censuses import AveragedCensus, BoundCensus, averaged_census, bound_census, round_half_up
from .generation import IsotopyClassRecord, enumerate_isotopy_classes, isotopy_representatives
