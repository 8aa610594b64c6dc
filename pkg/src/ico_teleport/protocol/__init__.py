"""
Nonlocal CU gate teleportation with two quantum switches.

This module provides:
- State preparation on the (a, b, A, B) register
- The two quantum switches and their superposed branch operators
- Adaptive ancilla measurements by two communicating parties
- Feed-forward and end-to-end protocol runs with resource accounting
- Randomized equivalence checks and the algebraic identity suite
"""

from .models import (
    ALL_BRANCHES,
    AnnihilatedBranchError,
    AOutcome,
    BOutcome,
    BranchOutcome,
    InputQubit,
    ProtocolError,
    ProtocolTranscript,
    ResourceLedger,
    classify,
)
from .parties import Alice, Bob, ClassicalChannel, Message
from .simulator import (
    REGISTER,
    AncillaMeasurement,
    apply_local_V,
    apply_switches,
    effective_operator,
    forced_branch,
    measure_ancillas,
    prepare_initial,
    quantum_switch,
    run_protocol,
    rzn,
    switch_operator,
    switch_superposition,
)
from .verification import (
    EXPECTED_LEDGER,
    resource_check,
    resource_comparison,
    verify_appendix,
    verify_identities,
    verify_equivalence,
)

__all__ = [
    "ALL_BRANCHES",
    "EXPECTED_LEDGER",
    "REGISTER",
    "AOutcome",
    "BOutcome",
    "Alice",
    "Bob",
    "AncillaMeasurement",
    "AnnihilatedBranchError",
    "BranchOutcome",
    "ClassicalChannel",
    "InputQubit",
    "Message",
    "ProtocolError",
    "ProtocolTranscript",
    "ResourceLedger",
    "apply_local_V",
    "apply_switches",
    "classify",
    "effective_operator",
    "forced_branch",
    "measure_ancillas",
    "prepare_initial",
    "quantum_switch",
    "resource_check",
    "resource_comparison",
    "run_protocol",
    "rzn",
    "switch_operator",
    "switch_superposition",
    "verify_appendix",
    "verify_identities",
    "verify_equivalence",
]
