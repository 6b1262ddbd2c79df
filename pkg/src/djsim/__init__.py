"""Single-qubit Deutsch-Jozsa toolkit.

Builds the four one-bit feedback oracles exactly, proves the classical
two-query bound by exhaustive enumeration, derives the optimal one-query
quantum input from orthogonality constraints (analytically and by grid
search), runs the single-query protocol with a checked call counter, and
demonstrates that exact function identification in one query is impossible.
"""

from .classical import (
    BitPair,
    ClassicalStrategy,
    OneBitFunction,
    QueryBoundReport,
    Verdict,
    apply_f_operator,
    consistent_functions,
    min_classical_queries,
    xor,
)
from .protocol import (
    CountingOracle,
    DJInput,
    DJOutcome,
    InvalidAngle,
    ProtocolViolation,
    prepare_input,
    run,
)
from .quantum import (
    NormalizationError,
    OracleMatrix,
    Qubit,
    TwoQubitState,
    apply_oracle,
    basis_state,
    inner,
    kickback_error,
    oracle_matrix,
    tensor,
)
from .solver import (
    CandidateState,
    CaseLabel,
    ConstraintResiduals,
    DerivationSolution,
    GridCluster,
    InfeasibilityReport,
    InvalidStep,
    grid_clusters,
    grid_search,
    identification_infeasibility,
    real_case_analysis,
    reduction_identity_check,
    residuals,
    solve_real_cases,
    theta_family_state,
)

__version__ = "0.1.0"

__all__ = [
    "BitPair",
    "CandidateState",
    "CaseLabel",
    "ClassicalStrategy",
    "ConstraintResiduals",
    "CountingOracle",
    "DJInput",
    "DJOutcome",
    "DerivationSolution",
    "GridCluster",
    "InfeasibilityReport",
    "InvalidAngle",
    "InvalidStep",
    "NormalizationError",
    "OneBitFunction",
    "OracleMatrix",
    "ProtocolViolation",
    "QueryBoundReport",
    "Qubit",
    "TwoQubitState",
    "Verdict",
    "apply_f_operator",
    "apply_oracle",
    "basis_state",
    "consistent_functions",
    "grid_clusters",
    "grid_search",
    "identification_infeasibility",
    "inner",
    "kickback_error",
    "min_classical_queries",
    "oracle_matrix",
    "prepare_input",
    "real_case_analysis",
    "reduction_identity_check",
    "residuals",
    "run",
    "solve_real_cases",
    "tensor",
    "theta_family_state",
    "xor",
]
