"""
Constructors for the target CU gate, the switch gates, feed-forward
corrections, named presets and the imperfect gate model.
"""

import logging
import math
from typing import Dict

import numpy as np

from ..qmath import (
    I2,
    X,
    Z_AXIS,
    Operator,
    UnitVec3,
    pauli_combination,
    rotation,
    tensor,
)
from ..qmath.operators import _rotation_matrix
from .models import (
    BranchClass,
    CUParams,
    FeedForward,
    GateParameterError,
    GatePreset,
    ProtocolGateSet,
)

logger = logging.getLogger(__name__)


def u_target(params: CUParams) -> Operator:
    """
    The target unitary exp[i(alpha I + theta n.sigma)].

    Closed form: e^{i alpha}(cos(theta) I + i sin(theta) n.sigma).
    """
    return Operator(
        np.exp(1j * params.alpha)
        * (math.cos(params.theta) * I2.matrix + 1j * math.sin(params.theta) * params.n.pauli().matrix)
    )


def cu_gate(params: CUParams) -> Operator:
    """Controlled-U on (control, target), control in the most significant slot."""
    matrix = np.eye(4, dtype=np.complex128)
    matrix[2:, 2:] = u_target(params).matrix
    return Operator(matrix)


_P0 = Operator(np.diag([1.0, 0.0]))
_P1 = Operator(np.diag([0.0, 1.0]))


def quantum_switch(first: Operator, second: Operator) -> Operator:
    """
    Two-order quantum switch on (control, target).

    Control |0> applies first then second; control |1> applies second then first.
    """
    return tensor([_P0, second @ first]) + tensor([_P1, first @ second])


def _switch_gates(params: CUParams, scale: float) -> ProtocolGateSet:
    # scale multiplies the x components of n and n_perp in Bob's gates and all of U_A2
    n = params.n.as_array() * np.array([scale, 1.0, 1.0])
    n_perp = params.n_perp.as_array() * np.array([scale, 1.0, 1.0])
    return ProtocolGateSet(
        u_a1=rotation(Z_AXIS, math.pi / 2),
        u_a2=scale * X,
        u_b1=Operator(_rotation_matrix(n, math.pi / 2)),
        u_b2=pauli_combination(n_perp),
        v_a=X,
        v_b=params.n_perp.pauli(),
    )


def protocol_gates(params: CUParams) -> ProtocolGateSet:
    """
    Ideal switch and local gates for a CU target.

    U_A1 = R_z(pi/2), U_A2 = X, U_B1 = R_n(pi/2), U_B2 = n_perp.sigma,
    V_A = X, V_B = n_perp.sigma.
    """
    return _switch_gates(params, 1.0)


def imperfect_gates(params: CUParams, delta: float) -> ProtocolGateSet:
    """
    Switch gates with the x-component imperfection (1 + delta).

    U_A1 is unchanged, U_A2 becomes (1 + delta) X, and the x components of n
    and n_perp inside U_B1 and U_B2 are scaled by (1 + delta) without
    renormalization. The local gates V_A and V_B stay ideal. delta = 0
    reproduces protocol_gates exactly.

    Args:
        params: Target CU parameters.
        delta: Imperfection parameter.

    Returns:
        A gate set that is non-unitary whenever delta != 0 touches a nonzero component.
    """
    if not math.isfinite(delta):
        raise GateParameterError(f"delta must be finite, got {delta}")
    gates = _switch_gates(params, 1.0 + delta)
    if delta != 0.0:
        logger.debug("imperfect gate set for delta=%g (unitary=%s)", delta, gates.is_unitary())
    return gates


def feedforward(branch: BranchClass, params: CUParams) -> FeedForward:
    """
    Feed-forward corrections and global phase for a branch class.

    class_mu: (R_z(alpha + pi/2), R_n(pi/2 - theta), e^{i alpha/2})
    class_nu: (R_z(alpha - pi/2), R_n(-pi/2 - theta), i e^{i alpha/2})
    """
    branch = BranchClass(branch)
    half_phase = np.exp(1j * params.alpha / 2)
    if branch is BranchClass.CLASS_MU:
        return FeedForward(
            branch_class=branch,
            w_a=rotation(Z_AXIS, params.alpha + math.pi / 2),
            w_b=rotation(params.n, math.pi / 2 - params.theta),
            phase=complex(half_phase),
        )
    return FeedForward(
        branch_class=branch,
        w_a=rotation(Z_AXIS, params.alpha - math.pi / 2),
        w_b=rotation(params.n, -math.pi / 2 - params.theta),
        phase=complex(1j * half_phase),
    )


_HALF_PI = math.pi / 2
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

PRESETS: Dict[str, GatePreset] = {
    "cnot": GatePreset(
        "cnot", CUParams(-_HALF_PI, _HALF_PI, UnitVec3(1.0, 0.0, 0.0), UnitVec3(0.0, 0.0, 1.0))
    ),
    "cz": GatePreset(
        "cz", CUParams(-_HALF_PI, _HALF_PI, UnitVec3(0.0, 0.0, 1.0), UnitVec3(1.0, 0.0, 0.0))
    ),
    "cy": GatePreset(
        "cy", CUParams(-_HALF_PI, _HALF_PI, UnitVec3(0.0, 1.0, 0.0), UnitVec3(1.0, 0.0, 0.0))
    ),
    "ch": GatePreset(
        "ch",
        CUParams(-_HALF_PI, _HALF_PI, UnitVec3(_INV_SQRT2, 0.0, _INV_SQRT2), UnitVec3(0.0, 1.0, 0.0)),
    ),
}

PRESET_NAMES = tuple(PRESETS)


def preset(name: str) -> GatePreset:
    """
    Look up a named gate (cnot, cz, cy, ch), case-insensitively.

    Raises:
        GateParameterError: For unknown names.
    """
    try:
        return PRESETS[name.strip().lower()]
    except (KeyError, AttributeError):
        raise GateParameterError(
            f"Unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None
