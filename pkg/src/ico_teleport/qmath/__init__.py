"""
Linear-algebra primitives for small qubit registers.

This module provides:
- Dense operators with Kronecker products and Pauli rotations
- Labelled state vectors with local gate application
- Projective measurement with sampled or forced outcomes
- Global-phase-insensitive comparison of operators and states
"""

from .operators import (
    DEFAULT_TOL,
    H,
    I2,
    MAX_QUBITS,
    PAULI,
    X,
    X_AXIS,
    Y,
    Y_AXIS,
    Z,
    Z_AXIS,
    Operator,
    QMathError,
    UnitVec3,
    equal_up_to_global_phase,
    global_phase_deviation,
    identity,
    pauli_combination,
    rotation,
    rx,
    ry,
    rz,
    tensor,
)
from .states import (
    COMPUTATIONAL,
    MIN_BRANCH_PROBABILITY,
    PLUS_MINUS,
    Basis2,
    ForcedOutcomes,
    ImpossibleBranchError,
    Measurement,
    OutcomeSource,
    SampledOutcomes,
    StateVec,
    apply,
    basis_state,
    forced,
    meas_basis_mu_nu,
    measure,
    sampled,
    single_qubit,
)

__all__ = [
    "DEFAULT_TOL",
    "MAX_QUBITS",
    "MIN_BRANCH_PROBABILITY",
    "H",
    "I2",
    "PAULI",
    "X",
    "Y",
    "Z",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "COMPUTATIONAL",
    "PLUS_MINUS",
    "Operator",
    "UnitVec3",
    "StateVec",
    "Basis2",
    "Measurement",
    "OutcomeSource",
    "SampledOutcomes",
    "ForcedOutcomes",
    "QMathError",
    "ImpossibleBranchError",
    "apply",
    "basis_state",
    "equal_up_to_global_phase",
    "forced",
    "global_phase_deviation",
    "identity",
    "meas_basis_mu_nu",
    "measure",
    "pauli_combination",
    "rotation",
    "rx",
    "ry",
    "rz",
    "sampled",
    "single_qubit",
    "tensor",
]
