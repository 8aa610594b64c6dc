"""
Gate constructors for nonlocal CU teleportation.

This module provides:
- The target CU gate and its single-qubit unitary
- The switch gates, local gates and the two-order quantum switch
- Feed-forward corrections per branch class
- Named presets (CNOT, CZ, CY, CH)
- The delta-imperfect gate model
"""

from .constructors import (
    PRESET_NAMES,
    PRESETS,
    cu_gate,
    feedforward,
    imperfect_gates,
    preset,
    protocol_gates,
    quantum_switch,
    u_target,
)
from .models import (
    BranchClass,
    CUParams,
    FeedForward,
    GateParameterError,
    GatePreset,
    ProtocolGateSet,
    orthogonal_axis,
)

__all__ = [
    "PRESET_NAMES",
    "PRESETS",
    "BranchClass",
    "CUParams",
    "FeedForward",
    "GateParameterError",
    "GatePreset",
    "ProtocolGateSet",
    "cu_gate",
    "feedforward",
    "imperfect_gates",
    "orthogonal_axis",
    "preset",
    "protocol_gates",
    "quantum_switch",
    "u_target",
]
