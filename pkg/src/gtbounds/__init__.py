"""Converse bounds, exact oracles and adaptive-testing simulation for
probabilistic group testing in the linear regime."""

__version__ = "0.1.0"

from .adaptive import (
    SimConfig,
    SimReport,
    expected_tests_per_item,
    identify_defectives,
    simulate,
)
from .bounds import (
    DELTA_STAR,
    BoundResult,
    CurveRow,
    SimplexProbeResult,
    adaptive_rate,
    adaptivity_gap,
    balanced_weight_bound,
    best_lower_bound,
    counting_bound,
    crossover_delta,
    fixed_weight_bound,
    individual_testing_bound,
    main_bound,
    quantization_bound,
    simplex_probe,
    sweep,
)
from .entropy import (
    balanced_row_weight,
    binary_entropy,
    conditional_entropy_floor,
    entropy_rate_cap,
    invert_entropy_rate_cap,
    residual_positive_prob,
)
from .errors import (
    CrossoverNotFoundError,
    DomainError,
    GTBoundsError,
    SizeLimitError,
    StructureError,
)
from .oracle import (
    JointDistribution,
    TestMatrix,
    enumerate_distribution,
    joint_entropy,
    prob_all_positive,
    verify_conditional_entropy_bound,
    verify_disjoint_minimum,
    verify_fractional_cover_bound,
    verify_joint_entropy_cap,
    verify_overlap_identities,
)
from .report import CheckRecord
from .suite import SuiteResult, run_suite

__all__ = [
    "__version__",
    "DELTA_STAR",
    "BoundResult",
    "CheckRecord",
    "CrossoverNotFoundError",
    "CurveRow",
    "DomainError",
    "GTBoundsError",
    "JointDistribution",
    "SimConfig",
    "SimReport",
    "SimplexProbeResult",
    "SizeLimitError",
    "StructureError",
    "SuiteResult",
    "TestMatrix",
    "adaptive_rate",
    "adaptivity_gap",
    "balanced_row_weight",
    "balanced_weight_bound",
    "best_lower_bound",
    "binary_entropy",
    "conditional_entropy_floor",
    "counting_bound",
    "crossover_delta",
    "enumerate_distribution",
    "entropy_rate_cap",
    "expected_tests_per_item",
    "fixed_weight_bound",
    "identify_defectives",
    "individual_testing_bound",
    "invert_entropy_rate_cap",
    "joint_entropy",
    "main_bound",
    "prob_all_positive",
    "quantization_bound",
    "residual_positive_prob",
    "run_suite",
    "simplex_probe",
    "simulate",
    "sweep",
    "verify_conditional_entropy_bound",
    "verify_disjoint_minimum",
    "verify_fractional_cover_bound",
    "verify_joint_entropy_cap",
    "verify_overlap_identities",
]
