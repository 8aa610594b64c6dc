"""
Data models for CU gate parameters and the protocol's gate sets.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..qmath import DEFAULT_TOL, I2, Operator, QMathError, UnitVec3, tensor


class GateParameterError(ValueError):
    """Raised for invalid CU parameters or unknown preset names."""
    pass


class BranchClass(str, Enum):
    """Equivalence class of joint ancilla outcomes sharing one feed-forward."""

    CLASS_MU = "class_mu"
    CLASS_NU = "class_nu"


# Below this norm z x n is treated as zero when choosing n_perp
_CROSS_EPS = 1e-8


def orthogonal_axis(n: UnitVec3) -> UnitVec3:
    """
    Deterministic unit vector orthogonal to n.

    Uses normalize(z x n), falling back to (1, 0, 0) when n is (anti)parallel to z.
    """
    cx, cy = -n.y, n.x
    norm = math.hypot(cx, cy)
    if norm > _CROSS_EPS:
        return UnitVec3(cx / norm, cy / norm, 0.0)
    return UnitVec3(1.0, 0.0, 0.0)


@dataclass(frozen=True)
class CUParams:
    """
    Parameters of CU = |0><0| (x) I + |1><1| (x) exp[i(alpha I + theta n.sigma)].

    Attributes:
        alpha: Global phase angle of the target unitary (radians).
        theta: Rotation angle of the target unitary (radians).
        n: Rotation axis.
        n_perp: Unit axis orthogonal to n. Derived with orthogonal_axis when omitted.
    """

    alpha: float
    theta: float
    n: UnitVec3
    n_perp: Optional[UnitVec3] = None

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.theta)):
            raise GateParameterError(f"Angles must be finite, got alpha={self.alpha}, theta={self.theta}")
        try:
            n = UnitVec3.coerce(self.n)
            n_perp = orthogonal_axis(n) if self.n_perp is None else UnitVec3.coerce(self.n_perp)
        except QMathError as e:
            raise GateParameterError(str(e)) from e
        if abs(n.dot(n_perp)) > DEFAULT_TOL:
            raise GateParameterError(
                f"n_perp {n_perp.as_array()} is not orthogonal to n {n.as_array()}"
            )
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "n_perp", n_perp)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "theta": self.theta,
            "n": self.n.to_dict(),
            "n_perp": self.n_perp.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CUParams":
        n_perp = data.get("n_perp")
        return cls(
            alpha=float(data["alpha"]),
            theta=float(data["theta"]),
            n=UnitVec3.from_dict(data["n"]),
            n_perp=UnitVec3.from_dict(n_perp) if n_perp else None,
        )


@dataclass(frozen=True)
class GatePreset:
    """A named CU gate with the parameters that realise it."""

    name: str
    params: CUParams

    def to_dict(self) -> dict:
        return {"name": self.name, "params": self.params.to_dict()}


@dataclass(frozen=True)
class ProtocolGateSet:
    """
    The six single-qubit gates used by one protocol run.

    u_a1/u_a2 sit in Alice's switch, u_b1/u_b2 in Bob's; v_a/v_b are the
    local gates applied before the switches. Imperfect sets may hold
    non-unitary operators.
    """

    u_a1: Operator
    u_a2: Operator
    u_b1: Operator
    u_b2: Operator
    v_a: Operator
    v_b: Operator

    @classmethod
    def identity(cls) -> "ProtocolGateSet":
        return cls(I2, I2, I2, I2, I2, I2)

    def is_unitary(self, tol: float = 1e-12) -> bool:
        return all(
            g.is_unitary(tol)
            for g in (self.u_a1, self.u_a2, self.u_b1, self.u_b2, self.v_a, self.v_b)
        )

    def order_0(self) -> Operator:
        """M0 = U_A2 U_A1 (x) U_B2 U_B1, the order taken when both controls are |0>."""
        return tensor([self.u_a2 @ self.u_a1, self.u_b2 @ self.u_b1])

    def order_1(self) -> Operator:
        """M1 = U_A1 U_A2 (x) U_B1 U_B2, the order taken when both controls are |1>."""
        return tensor([self.u_a1 @ self.u_a2, self.u_b1 @ self.u_b2])

    def local_v(self) -> Operator:
        return tensor([self.v_a, self.v_b])


@dataclass(frozen=True)
class FeedForward:
    """
    Corrections applied after the ancilla measurements.

    Attributes:
        w_a: Alice's correction on qubit A.
        w_b: Bob's correction on qubit B.
        phase: Global phase e^{i phi} with CU|psi> = phase * final state.
    """

    branch_class: BranchClass
    w_a: Operator
    w_b: Operator
    phase: complex = field(default=1.0 + 0.0j)

    def operator(self) -> Operator:
        return tensor([self.w_a, self.w_b])

    def to_dict(self) -> dict:
        return {
            "branch_class": self.branch_class.value,
            "phase": [float(np.real(self.phase)), float(np.imag(self.phase))],
        }
