"""
Two-photon path/polarization pipeline: SPDC source, PBS encoding, input
preparation, the Sagnac quantum switches, beam-splitter recombination and
coincidence post-selection.

Register order is (path1, pol1, path2, pol2); pol uses H = 0, V = 1.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..gates import CUParams, ProtocolGateSet, protocol_gates, quantum_switch
from ..protocol import AOutcome, BOutcome
from ..qmath import (
    MIN_BRANCH_PROBABILITY,
    I2,
    Operator,
    StateVec,
    X,
    apply,
    ry,
    tensor,
)
from .elements import OpticalElement, PhotonicError, as_jones

logger = logging.getLogger(__name__)

PHOTONIC_LABELS = ("path1", "pol1", "path2", "pol2")

_P0 = Operator(np.diag([1.0, 0.0]))
_P1 = Operator(np.diag([0.0, 1.0]))

# PBS on (path, pol): H keeps its path, V switches path
_PBS_ROUTE = Operator(
    np.array(
        [
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
        ]
    )
)

# Polarization flip on path 1 only
_FLIP_PATH_1 = tensor([_P0, I2]) + tensor([_P1, X])


@dataclass(frozen=True, eq=False)
class PhotonicState(StateVec):
    """Two-photon state on (path1, pol1, path2, pol2)."""

    labels: Tuple[str, ...] = PHOTONIC_LABELS

    def __post_init__(self):
        super().__post_init__()
        if self.labels != PHOTONIC_LABELS:
            raise PhotonicError(f"Photonic state labels must be {PHOTONIC_LABELS}, got {self.labels}")

    def amplitude_of(self, path1: int, pol1: int, path2: int, pol2: int) -> complex:
        return complex(self.amps[(path1 << 3) | (pol1 << 2) | (path2 << 1) | pol2])

    def polarization_block(self, path1: int, path2: int) -> np.ndarray:
        """Unnormalized (pol1, pol2) amplitudes for a fixed path pair."""
        return self.amps.reshape(2, 2, 2, 2)[path1, :, path2, :].reshape(-1)


def vbs(theta: float) -> Operator:
    """
    Variable beam splitter on a path qubit.

    |0> -> cos(theta/2)|0> + sin(theta/2)|1>, |1> -> sin(theta/2)|0> - cos(theta/2)|1>
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return Operator(np.array([[c, s], [s, -c]]))


def bs() -> Operator:
    """Balanced beam splitter, the real Hadamard on the path qubit."""
    return vbs(math.pi / 2)


def spdc_state() -> PhotonicState:
    """(|H>|H> + i|V>|V>)/sqrt(2) with both photons in path 0."""
    amps = np.zeros(16, dtype=np.complex128)
    amps[0b0000] = 1 / math.sqrt(2)
    amps[0b0101] = 1j / math.sqrt(2)
    return PhotonicState(amps)


def pbs_encode(state: PhotonicState) -> PhotonicState:
    """Route each photon's V component into path 1, keeping H in path 0."""
    state = apply(state, _PBS_ROUTE, ["path1", "pol1"])
    return apply(state, _PBS_ROUTE, ["path2", "pol2"])


def preparation_state(theta: float) -> np.ndarray:
    """Polarization cos(theta)|H> + sin(theta)|V> set by the preparation plates."""
    return np.array([math.cos(theta), math.sin(theta)], dtype=np.complex128)


PolarizationGate = Union[Operator, Sequence[OpticalElement]]


def prepare_inputs(
    state: PhotonicState,
    theta1: float,
    theta2: float,
    v_a: PolarizationGate = I2,
    v_b: PolarizationGate = I2,
) -> PhotonicState:
    """
    Turn the PBS-encoded pair into (|00> + i|11>)/sqrt(2) (x) V_A|psi_1> (x) V_B|psi_2>.

    The V photons in path 1 are flipped to H, then each photon's polarization
    is rotated to cos(theta_i)|H> + sin(theta_i)|V> and the local gates are
    applied on both paths.

    Args:
        state: Output of pbs_encode(spdc_state()).
        theta1, theta2: Preparation angles.
        v_a, v_b: Local gates as operators or element lists.
    """
    state = apply(state, _FLIP_PATH_1, ["path1", "pol1"])
    state = apply(state, _FLIP_PATH_1, ["path2", "pol2"])
    state = apply(state, ry(2 * theta1), ["pol1"])
    state = apply(state, ry(2 * theta2), ["pol2"])
    state = apply(state, as_jones(v_a), ["pol1"])
    return apply(state, as_jones(v_b), ["pol2"])


def _before_recombination(
    gates: ProtocolGateSet, theta1: float, theta2: float
) -> PhotonicState:
    state = prepare_inputs(pbs_encode(spdc_state()), theta1, theta2, gates.v_a, gates.v_b)
    # Path 0 photons circulate one way round the loop, path 1 photons the other
    state = apply(state, quantum_switch(gates.u_a1, gates.u_a2), ["path1", "pol1"])
    return apply(state, quantum_switch(gates.u_b1, gates.u_b2), ["path2", "pol2"])


def sagnac_run(
    params: CUParams,
    theta1: float,
    theta2: float,
    theta: Optional[float] = None,
    adaptive: bool = False,
    gates: Optional[ProtocolGateSet] = None,
) -> PhotonicState:
    """
    Full optical pipeline up to the detectors.

    Args:
        params: Target CU parameters.
        theta1, theta2: Input preparation angles.
        theta: VBS angle. Defaults to params.theta.
        adaptive: Use VBS(pi - theta) for events where photon 1 left in path 1.
        gates: Gate set placed in the interferometers. Defaults to protocol_gates(params).

    Returns:
        Normalized state on (path1, pol1, path2, pol2).
    """
    if gates is None:
        gates = protocol_gates(params)
    if theta is None:
        theta = params.theta

    state = apply(_before_recombination(gates, theta1, theta2), bs(), ["path1"])
    output = apply(state, vbs(theta), ["path2"])
    if not adaptive:
        return output

    alternative = apply(state, vbs(math.pi - theta), ["path2"])
    amps = output.amps.reshape(2, 8).copy()
    amps[1] = alternative.amps.reshape(2, 8)[1]
    return replace(output, amps=amps.reshape(-1))


class DetectorPair(str, Enum):
    """Two-fold coincidence channels and the path pair each one selects."""

    M1M3 = "M1M3"
    M2M4 = "M2M4"
    M1M4 = "M1M4"
    M2M3 = "M2M3"

    @property
    def paths(self) -> Tuple[int, int]:
        return _PAIR_PATHS[self]

    @property
    def ancilla_outcome(self) -> Tuple[AOutcome, BOutcome]:
        """Abstract (a, b) outcome the pair stands for: M1/M2 = +/-, M3/M4 = mu/nu."""
        return _PAIR_OUTCOMES[self]


_PAIR_PATHS = {
    DetectorPair.M1M3: (0, 0),
    DetectorPair.M2M4: (1, 1),
    DetectorPair.M1M4: (0, 1),
    DetectorPair.M2M3: (1, 0),
}

_PAIR_OUTCOMES = {
    DetectorPair.M1M3: (AOutcome.PLUS, BOutcome.MU),
    DetectorPair.M2M4: (AOutcome.MINUS, BOutcome.NU),
    DetectorPair.M1M4: (AOutcome.PLUS, BOutcome.NU),
    DetectorPair.M2M3: (AOutcome.MINUS, BOutcome.MU),
}


def coincidence(state: PhotonicState, pair: DetectorPair) -> Tuple[float, StateVec]:
    """
    Post-select a coincidence between the two detectors of a pair.

    Returns:
        (probability, renormalized polarization state on labels (A, B)).

    Raises:
        PhotonicError: If the pair has (numerically) zero probability.
    """
    pair = DetectorPair(pair)
    block = state.polarization_block(*pair.paths)
    probability = float(np.sum(np.abs(block) ** 2))
    if probability < MIN_BRANCH_PROBABILITY:
        raise PhotonicError(f"Coincidence {pair.value} has probability {probability:.3e}")
    logger.debug("coincidence %s: p=%.6f", pair.value, probability)
    return probability, StateVec(block / math.sqrt(probability), ("A", "B"))
