"""Exact engine for linear spans of noncommutative polynomial values on M_d(Q)."""

from .linalg import (
    Classification,
    DimensionMismatch,
    DuplicateNodes,
    MatrixQ,
    NonzeroTrace,
    NotInSpan,
    SpanBasis,
    commutator,
    commutator_decomposition,
    mat_add,
    mat_mul,
    mat_scale,
    subspace_of,
    trace,
    vandermonde_extract,
    zero_diagonal_conjugate,
)
from .linearize import (
    MultilinearReduction,
    NotReducible,
    OracleFailed,
    ReductionStep,
    StepKind,
    VariableCollision,
    delta,
    reduce_to_multilinear,
    resubstitute_check,
)
from .poly import MissingAssignment, NcPoly, Word, cyclic_representative
from .span import (
    ArityMismatch,
    ConstantInput,
    SampleConfig,
    SpanReport,
    classify_span,
    decompose_target,
    evaluate,
    find_witness_dimension,
    herstein_closure,
    is_central,
    is_identity,
    lie_ideal_check,
    nontriviality_oracle,
    vanishing_bound,
)
from .text import (
    ExponentNegative,
    ParseError,
    matrix_to_text,
    parse_matrix,
    parse_poly,
    poly_to_text,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "Classification",
    "ConstantInput",
    "DimensionMismatch",
    "DuplicateNodes",
    "ExponentNegative",
    "MatrixQ",
    "MissingAssignment",
    "MultilinearReduction",
    "NcPoly",
    "NonzeroTrace",
    "NotInSpan",
    "NotReducible",
    "OracleFailed",
    "ParseError",
    "ReductionStep",
    "SampleConfig",
    "SpanBasis",
    "SpanReport",
    "StepKind",
    "VariableCollision",
    "Word",
    "classify_span",
    "commutator",
    "commutator_decomposition",
    "cyclic_representative",
    "decompose_target",
    "delta",
    "evaluate",
    "find_witness_dimension",
    "herstein_closure",
    "is_central",
    "is_identity",
    "lie_ideal_check",
    "mat_add",
    "mat_mul",
    "mat_scale",
    "matrix_to_text",
    "nontriviality_oracle",
    "parse_matrix",
    "parse_poly",
    "poly_to_text",
    "reduce_to_multilinear",
    "resubstitute_check",
    "subspace_of",
    "trace",
    "vandermonde_extract",
    "vanishing_bound",
    "zero_diagonal_conjugate",
]
