"""Exact capacity and coded protocols for X-secure, T-private linear
computation over graph-based replicated storage."""

from .augment import (
    AugmentedSystem,
    ServerPlan,
    collusion_exposure,
    generate_augmented_system,
    merged_query_plan,
)
from .audit import (
    AuditReport,
    Violation,
    asymm_scheme_audit,
    exhaustive_independence_audit,
    merged_scheme_audit,
    privacy_rank_certificate,
    security_rank_certificate,
)
from .capacity import CapacityResult, asymptotic_capacity, build_capacity_lp
from .demos import (
    GRAPH_FOURTEEN,
    GRAPH_SIX,
    UNEVEN_NINE,
    UNEVEN_SEVEN,
    demo_names,
    run_demo,
)
from .errors import (
    DegenerateConfig,
    DegenerateInput,
    DegeneratePattern,
    DimensionMismatch,
    DuplicateNodes,
    FieldTooSmall,
    GxstplcError,
    Infeasible,
    ScaleExceeded,
    SingularMatrix,
    Unbounded,
    UnknownDemo,
)
from .exactlp import (
    LinearProgram,
    LpSolution,
    enumerate_vertices_oracle,
    lcm_of_denominators,
    simplex_min,
)
from .ff import (
    FieldElement,
    FieldMatrix,
    PrimeField,
    is_prime,
    mat_inverse,
    mat_mul,
    mat_rank,
    mat_solve,
    smallest_prime_at_least,
    vandermonde,
)
from .pattern import (
    DualPattern,
    MessageSet,
    StoragePattern,
    dual,
    load_pattern,
    min_replication_slack,
    pattern_from_dict,
    pattern_to_dict,
    save_pattern,
)
from .scheme import (
    AsymmConfig,
    CoefficientBank,
    FieldSampler,
    MergedSimulation,
    MessageBank,
    QueryBank,
    SchemeParams,
    ShareBank,
    SimulationResult,
    Transcript,
    alignment_identity_check,
    cauchy_vandermonde_check,
    collect_answers,
    dual_grs_weights,
    encode_storage,
    expected_combination,
    generate_queries,
    reconstruct,
    run_protocol,
    server_answer,
    setup,
    simulate,
    simulate_merged,
    stored_symbols,
    zero_query_noise,
    zero_storage_noise,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmConfig",
    "AuditReport",
    "AugmentedSystem",
    "CapacityResult",
    "CoefficientBank",
    "DegenerateConfig",
    "DegenerateInput",
    "DegeneratePattern",
    "DimensionMismatch",
    "DualPattern",
    "DuplicateNodes",
    "FieldElement",
    "FieldMatrix",
    "FieldSampler",
    "FieldTooSmall",
    "GRAPH_FOURTEEN",
    "GRAPH_SIX",
    "GxstplcError",
    "Infeasible",
    "LinearProgram",
    "LpSolution",
    "MergedSimulation",
    "MessageBank",
    "MessageSet",
    "PrimeField",
    "QueryBank",
    "ScaleExceeded",
    "SchemeParams",
    "ServerPlan",
    "ShareBank",
    "SimulationResult",
    "SingularMatrix",
    "StoragePattern",
    "Transcript",
    "UNEVEN_NINE",
    "UNEVEN_SEVEN",
    "Unbounded",
    "UnknownDemo",
    "Violation",
    "alignment_identity_check",
    "asymm_scheme_audit",
    "asymptotic_capacity",
    "build_capacity_lp",
    "cauchy_vandermonde_check",
    "collect_answers",
    "collusion_exposure",
    "demo_names",
    "dual",
    "dual_grs_weights",
    "encode_storage",
    "enumerate_vertices_oracle",
    "exhaustive_independence_audit",
    "expected_combination",
    "generate_augmented_system",
    "generate_queries",
    "is_prime",
    "lcm_of_denominators",
    "load_pattern",
    "mat_inverse",
    "mat_mul",
    "mat_rank",
    "mat_solve",
    "merged_query_plan",
    "merged_scheme_audit",
    "min_replication_slack",
    "pattern_from_dict",
    "pattern_to_dict",
    "privacy_rank_certificate",
    "reconstruct",
    "run_demo",
    "run_protocol",
    "save_pattern",
    "security_rank_certificate",
    "server_answer",
    "setup",
    "simplex_min",
    "simulate",
    "simulate_merged",
    "smallest_prime_at_least",
    "stored_symbols",
    "vandermonde",
    "zero_query_noise",
    "zero_storage_noise",
]
