"""Measurement-dependent quantum steering toolkit."""

from .behaviors import (
    Behavior,
    CorrelatorVector,
    behavior_from_quantum,
    chsh_value,
    correlators,
    no_signalling_check,
    pr_box,
    randomness_behavior,
    tilted_behavior,
)
from .inequality import (
    binary_entropy,
    local_bound,
    md_operator,
    pr_closed_form,
    randomness_rate,
    tilted_bell_value,
    tilted_closed_form,
    violation,
)
from .kernel import (
    Direction,
    Tolerances,
    TwoQubitState,
    ValidationError,
    bell_phi_plus,
    expectation,
    pauli_observable,
    pure_state,
    tensor,
)
from .oracle import (
    ExtremalStrategy,
    StrategyMixture,
    bound_sweep,
    extremal_correlators,
    general_beta_operator,
    mixture_correlators,
)
from .optimize import CurvePoint, QuantumAnsatz, SearchConfig, curve, quantum_max, quantum_value
from .steering import (
    Assemblage,
    MdLhsModel,
    WeightParams,
    assemblage_from_mdlhs,
    assemblage_from_state,
    behavior_from_assemblage,
    md_weight,
    mdlhv_decomposition_check,
    mix_assemblages,
    weight_bound,
    weight_limit_values,
)

__version__ = "0.1.0"
