from __future__ import annotations

from .counted_entries import CountedEntries
from .report import Report
