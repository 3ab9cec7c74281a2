"""Exact tools for gross substitutes valuations and matroid rank cones on small ground sets."""

from .cone import (
    ConeSpec,
    Decomposition,
    DecompositionResult,
    FarkasCertificate,
    decompose,
    g2_generators,
    g3_generators,
    g4_generators,
    is_strong_quotient,
    matroid_cone,
    sample_gs,
    verify_certificate,
    weighted_rank_decompose,
    weighted_rank_valuation,
)
from .errors import ConcordanceError, InputError, IntegrabilityError, NotGSError, ParseError
from .fileio import load_matroid, load_valuation, save_valuation
from .matroid import (
    Matroid,
    WeightedMatroid,
    enumerate_matroids,
    graphic_matroid,
    is_matroid_rank_valuation,
    normalized_rank,
    rank_function,
    uniform_matroid,
)
from .substitutes import check_gs, check_local_global, check_submodular, demand, greedy, is_gs
from .tree import (
    DeltaTensor,
    LabeledTree,
    concordant,
    concordant_sum,
    delta_tensor,
    extract_tree,
    reconstruct,
)
from .valuation import AffineTransform, Valuation, apply_affine, d2, inner_product, normalize

__all__ = [name for name in dir() if not name.startswith("_")]
