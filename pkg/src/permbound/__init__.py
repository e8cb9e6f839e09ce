"""Certified upper bounds for matrix permanents.

The core object is the permanent process (`run_process`): a Gaussian-
elimination-shaped sweep whose pivot product upper-bounds the permanent
of a non-negative (or Gram) matrix.  Around it sit the permanental
inverse, Schur-style block bounds, majorant certificates, boundedness
checks for the intermediate values, and a PSD variant.
"""

from .bounds import (
    BoundFunction,
    BoundReport,
    DiagDominanceResult,
    MajorantCertificate,
    RatioCheck,
    bound_function,
    cycle_sum_ratio,
    diag_dominance_certify,
    entry_bound_check,
    exp_family,
    exp_family_closed_form,
    perm_ratio_check,
    rowsum_bound,
    solve_majorant,
    verify_majorant,
)
from .errors import (
    ConditionViolated,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    InvalidGram,
    NegativeEntry,
    NegativeInput,
    NotSquare,
    ParameterOutOfRange,
    ParseError,
    PermboundError,
    PreconditionViolated,
    ZeroPermanent,
    ZeroPivot,
)
from .matcore import (
    IndexSet,
    Matrix,
    add,
    delete,
    determinant,
    identity,
    matmul,
    matrix,
    ones,
    outer,
    permanent_naive,
    permanent_ryser,
    select,
    transpose,
)
from .matio import (
    ParsedMatrix,
    as_subject,
    parse_csv_text,
    parse_json_text,
    parse_matrix_file,
    serialize_csv,
    serialize_json,
    to_kind,
)
from .perminv import (
    DominanceCheck,
    MinorRatioCheck,
    PermanentalInverse,
    check_identity_dominance,
    minor_ratio_inequality,
    permanental_inverse,
)
from .permschur import (
    BlockSplit,
    SidePair,
    bordered,
    condense,
    rank1_update_permanent,
    row_uncrossing_sides,
    schur_permanent_bound,
    two_row_inequality_sides,
)
from .process import (
    PivotBoundCheck,
    ProcessTrace,
    UMatrix,
    pivot_lower_bound_check,
    process_bound,
    recursive_u,
    run_gaussian_variant,
    run_process,
)
from .psd import (
    AlphaCoefficients,
    GramMatrix,
    PsdSchurCheck,
    alpha_coefficients,
    gram_from_factor,
    is_psd_exact,
    permanent_tensor,
    psd_schur_check,
)
from .scalars import FLOAT64, RATIONAL, coerce, eq_scalar, format_scalar, leq_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "BoundFunction",
    "BoundReport",
    "DiagDominanceResult",
    "MajorantCertificate",
    "RatioCheck",
    "bound_function",
    "cycle_sum_ratio",
    "diag_dominance_certify",
    "entry_bound_check",
    "exp_family",
    "exp_family_closed_form",
    "perm_ratio_check",
    "rowsum_bound",
    "solve_majorant",
    "verify_majorant",
    "ConditionViolated",
    "DimensionMismatch",
    "DimensionTooLarge",
    "IndexOutOfRange",
    "InvalidGram",
    "NegativeEntry",
    "NegativeInput",
    "NotSquare",
    "ParameterOutOfRange",
    "ParseError",
    "PermboundError",
    "PreconditionViolated",
    "ZeroPermanent",
    "ZeroPivot",
    "IndexSet",
    "Matrix",
    "add",
    "delete",
    "determinant",
    "identity",
    "matmul",
    "matrix",
    "ones",
    "outer",
    "permanent_naive",
    "permanent_ryser",
    "select",
    "transpose",
    "ParsedMatrix",
    "as_subject",
    "parse_csv_text",
    "parse_json_text",
    "parse_matrix_file",
    "serialize_csv",
    "serialize_json",
    "to_kind",
    "DominanceCheck",
    "MinorRatioCheck",
    "PermanentalInverse",
    "check_identity_dominance",
    "minor_ratio_inequality",
    "permanental_inverse",
    "BlockSplit",
    "SidePair",
    "bordered",
    "condense",
    "rank1_update_permanent",
    "row_uncrossing_sides",
    "schur_permanent_bound",
    "two_row_inequality_sides",
    "PivotBoundCheck",
    "ProcessTrace",
    "UMatrix",
    "pivot_lower_bound_check",
    "process_bound",
    "recursive_u",
    "run_gaussian_variant",
    "run_process",
    "AlphaCoefficients",
    "GramMatrix",
    "PsdSchurCheck",
    "alpha_coefficients",
    "gram_from_factor",
    "is_psd_exact",
    "permanent_tensor",
    "psd_schur_check",
    "RATIONAL",
    "FLOAT64",
    "coerce",
    "eq_scalar",
    "format_scalar",
    "leq_scalar",
    "parse_scalar",
    "__version__",
]
