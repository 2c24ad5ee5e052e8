"""Computational group theory toolkit.

Free-group word arithmetic, Whitehead primitivity testing, Stallings
subgroup graphs, free products with Bass-Serre tree geometry, and a harness
that certifies the block satisfaction pattern on explicit witness matrices.
"""

from .criterion import (
    SatMatrix,
    check_order_witness,
    expected_pattern,
    extract_noneq_row,
    matches_pattern,
)
from .free_group import (
    IDENTITY,
    FreeWord,
    commutes,
    cyclic_split,
    format_word,
    invert,
    multiply,
    parse_word,
    power,
    qth_root,
)
from .free_product import (
    FactorGroup,
    FPElement,
    FreeFactor,
    FreeProductGroup,
    TableGroup,
    cyclic_group,
    fp_commutes,
    fp_cyclic_split,
    fp_invert,
    fp_multiply,
    fp_power,
    fp_qth_root,
    load_factor_file,
    load_factor_spec,
)
from .bass_serre import (
    Elliptic,
    Hyperbolic,
    TreeVertex,
    act,
    axis_overlap_edges,
    axis_segment,
    canonicalize,
    classify,
    distance,
    geodesic,
)
from .parsing import ParseError
from .stallings import CoreGraph, contains, fold, rank, verify_basis_pair
from .whitehead import (
    PrimitivityVerdict,
    WhiteheadMove,
    apply_move,
    enumerate_moves,
    inverse_move,
    is_primitive,
    primitivity_in_ambient,
    replay,
)
from .witness import (
    Falsified,
    Satisfied,
    Undecided,
    UndecidedCellError,
    build_matrices,
    decide_pair,
    evaluate_matrix,
    search_power_decomposition,
    strip_common_conjugator,
    verify_certificate,
)

__version__ = "0.1.0"
