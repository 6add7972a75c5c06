"""Local-equivalence invariants of involutive complexes over F2[U].

The package builds the basis complexes X_i, reduces signed combinations of
them to small doubled representatives, computes F2[U]-module homology by
monomial matrix reduction, runs the tower-placement algorithm for connected
homology, and decodes connected modules back to combinations.
"""

from .complexes import (
    AnyComplex,
    Cell,
    FUMatrix,
    GeometricComplex,
    SplitComplex,
    build_misordered,
    build_trivial,
    build_xi,
    canonical_splitting,
    complex_from_json,
    complex_to_json,
    decompose,
    dual,
    tensor,
    to_fu_matrices,
    width,
)
from .connected import (
    LinearCombination,
    LocalClass,
    connect_sum,
    connected_homology,
    decode,
    hf_conn,
    place_towers,
    predict_mu_bar,
    predict_rokhlin_parity,
    representative,
    simplify,
)
from .doubling import (
    DoubleResult,
    VerifyReport,
    double,
    half,
    local_map_f,
    local_map_g,
    verify_local_pair,
)
from .errors import (
    ExpressionError,
    InvalidComplex,
    NotAChainMap,
    NotInXForm,
    NotSimplified,
    NotSplit,
    WidthExceeded,
)
from .expr import format_expression, parse_expression
from .homology import ChainMap, ReductionResult, compose, homology, induced_map, is_u_localized_iso
from .render import render, render_ascii, render_svg
from .suite import SuiteConfig, SuiteReport, run_suite
from .towers import (
    DOWN,
    INFINITE,
    UP,
    FUModule,
    Grading,
    Orientation,
    Tower,
    kunneth,
    reflect,
    shift,
    signed_rank,
)

__all__ = [
    "AnyComplex",
    "Cell",
    "ChainMap",
    "DOWN",
    "DoubleResult",
    "ExpressionError",
    "FUMatrix",
    "FUModule",
    "GeometricComplex",
    "Grading",
    "INFINITE",
    "InvalidComplex",
    "LinearCombination",
    "LocalClass",
    "NotAChainMap",
    "NotInXForm",
    "NotSimplified",
    "NotSplit",
    "Orientation",
    "ReductionResult",
    "SplitComplex",
    "SuiteConfig",
    "SuiteReport",
    "Tower",
    "UP",
    "VerifyReport",
    "WidthExceeded",
    "build_misordered",
    "build_trivial",
    "build_xi",
    "canonical_splitting",
    "complex_from_json",
    "complex_to_json",
    "compose",
    "connect_sum",
    "connected_homology",
    "decode",
    "decompose",
    "double",
    "dual",
    "format_expression",
    "half",
    "hf_conn",
    "homology",
    "induced_map",
    "is_u_localized_iso",
    "kunneth",
    "local_map_f",
    "local_map_g",
    "parse_expression",
    "place_towers",
    "predict_mu_bar",
    "predict_rokhlin_parity",
    "reflect",
    "render",
    "render_ascii",
    "render_svg",
    "representative",
    "run_suite",
    "shift",
    "signed_rank",
    "simplify",
    "tensor",
    "to_fu_matrices",
    "verify_local_pair",
    "width",
]
