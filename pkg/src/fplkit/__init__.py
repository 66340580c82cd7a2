"""Fully-packed loops, alternating-sign matrices and their symmetry classes."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Asm,
    Fpl,
    SymmetryFlags,
    asm_from_text,
    asm_to_fpl,
    asm_to_text,
    classify_symmetry,
    first_row_index,
    fpl_to_asm,
    rotate_half,
    rotate_quarter,
    validate_asm,
    validate_fpl,
)
from .enumeration import (  # noqa: E402
    SymmetryClass,
    count_class,
    count_formula_A,
    enumerate_asms,
    partitions,
    recurrence_ratio_A,
    refined_polynomial,
)
from .errors import FplError  # noqa: E402
from .linkpat import (  # noqa: E402
    LinkPattern,
    apply_e,
    apply_e_sym,
    extract_link_pattern,
    ht_decode,
    ht_encode,
    pattern_counts,
    qqt_reduce,
    qt_reduce,
    stationary_distribution,
    transition_matrix,
)
from .tilings import (  # noqa: E402
    LatticePathSystem,
    MatchRegion,
    ciucu_factorize,
    closed_form_p,
    count_cssc,
    count_matchings,
    count_qcsscpp,
    fixed_edge_closure,
    fpl_to_quotient_matching,
    hexagon_region,
    lgv_count,
    quotient_by_rotation,
)
from .verify import VerificationReport  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
