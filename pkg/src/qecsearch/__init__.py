"""Variational discovery and verification of quantum error-correcting codes.

The package searches for ((n, K, d)) codes by optimizing parameterized
encoding circuits against detection-cost functions, then verifies the
candidates by exact simulation: Knill-Laflamme checks, distances,
weight enumerators, noise floors and expressibility diagnostics.
"""

__version__ = "0.1.0"

from .ansatz import Ansatz, Gate, hardware_efficient_ansatz, staged_pair_ansatz
from .artifact import CodeArtifact, artifact_from_result, load_artifact, save_artifact
from .cost import CostBreakdown, cost_l1, cost_l2, gradient, matrix_elements
from .errors import (
    ErrorSet,
    ErrorTerm,
    SparseOperator,
    collective_ad_error_set,
    depolarizing_zz_detection_set,
    depolarizing_zz_kraus,
    error_products,
    pauli_below_effective,
    pauli_below_weight,
    single_ad_error_set,
)
from .graphs import (
    ConnectivityGraph,
    complete_bipartite_graph,
    complete_graph,
    line_graph,
    ring_graph,
    star_graph,
)
from .noise import (
    DensityMatrix,
    GateNoiseModel,
    bp_scan,
    lambda_split,
    noisy_cost_l2,
    noisy_evaluate,
    resilience_check,
)
from .optimize import SearchConfig, SearchResult, varqec_search
from .paulis import PauliString
from .presets import (
    SEARCH_PRESETS,
    STABILIZER_TABLES,
    named_graph,
    non_cws_6_2_3,
    non_cws_7_2_3,
    search_preset,
    stabilizer_table_code,
)
from .qfim import QfimResult, dc_max, l_crit, parameter_dimension, qfim
from .states import StateVector, basis_state
from .verify import (
    CodeCandidate,
    VerificationReport,
    code_distance,
    concat_bound,
    effective_distance,
    extend_non_cws,
    hamming_check,
    inaccuracy_bound,
    kl_report,
    local_equivalence,
    stabilizer_basis,
    weight_enumerators,
)

__all__ = [
    "Ansatz",
    "CodeArtifact",
    "CodeCandidate",
    "ConnectivityGraph",
    "CostBreakdown",
    "DensityMatrix",
    "ErrorSet",
    "ErrorTerm",
    "Gate",
    "GateNoiseModel",
    "PauliString",
    "QfimResult",
    "SEARCH_PRESETS",
    "STABILIZER_TABLES",
    "SearchConfig",
    "SearchResult",
    "SparseOperator",
    "StateVector",
    "VerificationReport",
    "artifact_from_result",
    "basis_state",
    "bp_scan",
    "code_distance",
    "collective_ad_error_set",
    "complete_bipartite_graph",
    "complete_graph",
    "concat_bound",
    "cost_l1",
    "cost_l2",
    "dc_max",
    "depolarizing_zz_detection_set",
    "depolarizing_zz_kraus",
    "effective_distance",
    "error_products",
    "extend_non_cws",
    "gradient",
    "hamming_check",
    "hardware_efficient_ansatz",
    "inaccuracy_bound",
    "kl_report",
    "l_crit",
    "lambda_split",
    "line_graph",
    "load_artifact",
    "local_equivalence",
    "matrix_elements",
    "named_graph",
    "noisy_cost_l2",
    "noisy_evaluate",
    "non_cws_6_2_3",
    "non_cws_7_2_3",
    "parameter_dimension",
    "pauli_below_effective",
    "pauli_below_weight",
    "qfim",
    "resilience_check",
    "ring_graph",
    "save_artifact",
    "search_preset",
    "single_ad_error_set",
    "stabilizer_basis",
    "stabilizer_table_code",
    "staged_pair_ansatz",
    "star_graph",
    "varqec_search",
    "weight_enumerators",
]
