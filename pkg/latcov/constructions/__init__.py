from __future__ import annotations

from .idempotent import disjoint_transversals, idempotent_square, idempotent_with_disjoint_transversals, idempotentize
from .maximal_pt import maximal_pt_square, relabeled_array
from .mols import MolsPair, is_orthogonal, mols
from .ryser import ryser_embed
from .t2t import ConstructionBundle, build_t2t, cover_family, load_bundle, save_bundle, verify_bundle
