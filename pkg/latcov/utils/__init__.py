from __future__ import annotations

from .budget import DEFAULT_NODE_BUDGET, SearchBudget, resolve
from .runner import Runner
