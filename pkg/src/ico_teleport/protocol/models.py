"""
Data models for protocol runs.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..gates import BranchClass, FeedForward
from ..qmath import StateVec


class ProtocolError(ValueError):
    """Raised for invalid protocol inputs."""
    pass


class AnnihilatedBranchError(ProtocolError):
    """Raised when an (imperfect) switch leaves a branch with zero norm."""
    pass


class AOutcome(str, Enum):
    """Alice's ancilla outcome in the {|+>, |->} basis."""

    PLUS = "plus"
    MINUS = "minus"


class BOutcome(str, Enum):
    """Bob's ancilla outcome in his adaptively chosen {mu, nu} basis."""

    MU = "mu"
    NU = "nu"


# Joint outcomes that need the class_mu correction; the other two need class_nu
_CLASS_MU_OUTCOMES = {(AOutcome.PLUS, BOutcome.MU), (AOutcome.MINUS, BOutcome.NU)}

# Exhaustive branch enumeration in (a, b) order
ALL_BRANCHES: Tuple[Tuple[AOutcome, BOutcome], ...] = (
    (AOutcome.PLUS, BOutcome.MU),
    (AOutcome.PLUS, BOutcome.NU),
    (AOutcome.MINUS, BOutcome.MU),
    (AOutcome.MINUS, BOutcome.NU),
)


def classify(a_outcome: AOutcome, b_outcome: BOutcome) -> BranchClass:
    if (AOutcome(a_outcome), BOutcome(b_outcome)) in _CLASS_MU_OUTCOMES:
        return BranchClass.CLASS_MU
    return BranchClass.CLASS_NU


@dataclass(frozen=True)
class InputQubit:
    """
    Single-qubit input alpha|0> + beta|1>.

    Attributes:
        amp0: Amplitude of |0>.
        amp1: Amplitude of |1>.
    """

    amp0: complex
    amp1: complex

    def __post_init__(self):
        norm_sq = abs(self.amp0) ** 2 + abs(self.amp1) ** 2
        if abs(norm_sq - 1.0) > 1e-12:
            raise ProtocolError(f"Input qubit is not normalized (|a|^2+|b|^2 = {norm_sq:.15g})")
        object.__setattr__(self, "amp0", complex(self.amp0))
        object.__setattr__(self, "amp1", complex(self.amp1))

    @classmethod
    def from_angle(cls, theta: float) -> "InputQubit":
        """cos(theta)|0> + sin(theta)|1>, the waveplate-prepared polarization state."""
        return cls(np.cos(theta), np.sin(theta))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "InputQubit":
        """Haar-random qubit drawn from the given generator."""
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = v / np.linalg.norm(v)
        return cls(v[0], v[1])

    def as_array(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=np.complex128)

    def to_dict(self) -> dict:
        return {
            "amp0": [self.amp0.real, self.amp0.imag],
            "amp1": [self.amp1.real, self.amp1.imag],
        }


@dataclass(frozen=True)
class BranchOutcome:
    """
    Joint ancilla outcome of one run.

    Attributes:
        a_outcome: Alice's result on ancilla a.
        b_outcome: Bob's result on ancilla b.
        b_basis_angle: theta when a = plus, pi - theta when a = minus.
    """

    a_outcome: AOutcome
    b_outcome: BOutcome
    b_basis_angle: float

    @property
    def branch_class(self) -> BranchClass:
        return classify(self.a_outcome, self.b_outcome)

    def to_dict(self) -> dict:
        return {
            "a_outcome": self.a_outcome.value,
            "b_outcome": self.b_outcome.value,
            "b_basis_angle": self.b_basis_angle,
            "branch_class": self.branch_class.value,
        }


@dataclass
class ResourceLedger:
    """Counts of consumed resources."""

    ebits: int = 0
    cbits: int = 0
    switches: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ProtocolTranscript:
    """
    Everything one protocol run produced.

    Attributes:
        outcome: Joint ancilla outcome.
        branch_probability: Probability of that joint outcome.
        feedforward: Corrections applied, with the class phase.
        global_phase: Phase with cu_gate|inputs> = global_phase * final_state.
        branch_state: Renormalized (A, B) state right after the measurements.
        final_state: (A, B) state after the corrections.
        ledger: Resources consumed by the run.
        messages: Classical messages exchanged, in order.
    """

    outcome: BranchOutcome
    branch_probability: float
    feedforward: FeedForward
    global_phase: complex
    branch_state: StateVec
    final_state: StateVec
    ledger: ResourceLedger
    messages: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def branch_class(self) -> BranchClass:
        return self.outcome.branch_class

    def corrected_state(self) -> np.ndarray:
        """global_phase * final_state amplitudes, equal to cu_gate|inputs>."""
        return self.global_phase * self.final_state.amps

    def to_dict(self, include_states: Optional[bool] = False) -> dict:
        data = {
            "outcome": self.outcome.to_dict(),
            "branch_probability": self.branch_probability,
            "feedforward": self.feedforward.to_dict(),
            "global_phase": [self.global_phase.real, self.global_phase.imag],
            "ledger": self.ledger.to_dict(),
            "messages": list(self.messages),
        }
        if include_states:
            data["branch_state"] = self.branch_state.to_dict()
            data["final_state"] = self.final_state.to_dict()
        return data
