"""
Labelled state vectors, local gate application and projective measurement.

Qubit order follows the labels: the first label is the most significant bit
of the amplitude index.
"""

import logging
from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .operators import MAX_QUBITS, Operator, QMathError

logger = logging.getLogger(__name__)

# Normalization tolerance for states built by the public operations
NORM_TOL = 1e-12

# Branches below this probability cannot be forced
MIN_BRANCH_PROBABILITY = 1e-14


class ImpossibleBranchError(QMathError):
    """Raised when a forced measurement outcome has (numerically) zero probability."""
    pass


@dataclass(frozen=True, eq=False)
class StateVec:
    """
    Pure state of a labelled qubit register.

    Attributes:
        amps: Complex amplitudes, length 2^len(labels).
        labels: Distinct qubit names, most significant first.
    """

    amps: np.ndarray
    labels: Tuple[str, ...]

    __array_ufunc__ = None

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise QMathError("A state needs at least one qubit label")
        if len(set(labels)) != len(labels):
            raise QMathError(f"Duplicate qubit labels: {labels}")
        if len(labels) > MAX_QUBITS:
            raise QMathError(f"Register of {len(labels)} qubits exceeds {MAX_QUBITS}")
        amps = np.array(self.amps, dtype=np.complex128).ravel()
        if amps.shape[0] != 2 ** len(labels):
            raise QMathError(
                f"{len(labels)} labels need {2 ** len(labels)} amplitudes, got {amps.shape[0]}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "StateVec":
        norm = self.norm()
        if norm == 0.0:
            raise QMathError("Cannot normalize the zero vector")
        return replace(self, amps=self.amps / norm)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise QMathError(f"Unknown qubit label {label!r}; have {self.labels}") from None

    def amplitude(self, bits: str) -> complex:
        """Amplitude of a computational basis string such as '0101'."""
        if len(bits) != self.n_qubits or set(bits) - {"0", "1"}:
            raise QMathError(f"Bad basis string {bits!r} for {self.n_qubits} qubits")
        return complex(self.amps[int(bits, 2)])

    def tensor(self, other: "StateVec") -> "StateVec":
        return StateVec(np.kron(self.amps, other.amps), self.labels + other.labels)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "amps": [[float(a.real), float(a.imag)] for a in self.amps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StateVec":
        return cls(
            np.array([complex(re, im) for re, im in data["amps"]]),
            tuple(data["labels"]),
        )

    def __repr__(self) -> str:
        return f"StateVec(labels={self.labels})"


def basis_state(bits: str, labels: Sequence[str]) -> StateVec:
    """Computational basis state |bits> on the given labels."""
    labels = tuple(labels)
    if len(bits) != len(labels) or set(bits) - {"0", "1"}:
        raise QMathError(f"Bad basis string {bits!r} for labels {labels}")
    amps = np.zeros(2 ** len(labels), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return StateVec(amps, labels)


def single_qubit(amp0: complex, amp1: complex, label: str) -> StateVec:
    return StateVec(np.array([amp0, amp1]), (label,))


def _resolve_targets(state: StateVec, targets: Sequence[Union[str, int]]) -> Tuple[int, ...]:
    if isinstance(targets, (str, int)):
        targets = (targets,)
    positions = []
    for target in targets:
        if isinstance(target, str):
            positions.append(state.index_of(target))
        else:
            if not 0 <= int(target) < state.n_qubits:
                raise QMathError(f"Qubit index {target} out of range for {state.n_qubits} qubits")
            positions.append(int(target))
    if not positions:
        raise QMathError("apply() needs at least one target")
    if len(set(positions)) != len(positions):
        raise QMathError(f"Targets must be distinct, got {tuple(targets)}")
    return tuple(positions)


def apply(state: StateVec, gate: Operator, targets: Sequence[Union[str, int]]) -> StateVec:
    """
    Apply a k-qubit operator to the listed qubits of a register.

    The first target is the most significant qubit of the gate. Other qubits
    are left untouched.

    Args:
        state: Register to act on.
        gate: Operator of dimension 2^k.
        targets: k distinct labels or indices.

    Returns:
        New state of the same type and labels. The norm is preserved when
        gate is unitary.

    Raises:
        QMathError: On unknown labels, repeated targets or a dimension mismatch.
    """
    positions = _resolve_targets(state, targets)
    k = len(positions)
    if gate.dim != 2 ** k:
        raise QMathError(f"Gate of dim {gate.dim} cannot act on {k} target(s)")
    n = state.n_qubits
    psi = state.amps.reshape((2,) * n)
    g = gate.matrix.reshape((2,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), list(positions)))
    out = np.moveaxis(out, list(range(k)), list(positions))
    return replace(state, amps=out.reshape(-1))


@dataclass(frozen=True, eq=False)
class Basis2:
    """
    Orthonormal single-qubit measurement basis.

    Attributes:
        v0: Vector for outcome index 0.
        v1: Vector for outcome index 1.
        names: Outcome names, index-aligned.
    """

    v0: np.ndarray
    v1: np.ndarray
    names: Tuple[str, str] = ("0", "1")

    def __post_init__(self):
        v0 = np.array(self.v0, dtype=np.complex128).ravel()
        v1 = np.array(self.v1, dtype=np.complex128).ravel()
        if v0.shape != (2,) or v1.shape != (2,):
            raise QMathError("Basis vectors must have two components")
        gram = np.array([[np.vdot(a, b) for b in (v0, v1)] for a in (v0, v1)])
        if np.max(np.abs(gram - np.eye(2))) > NORM_TOL:
            raise QMathError("Basis vectors are not orthonormal")
        v0.setflags(write=False)
        v1.setflags(write=False)
        object.__setattr__(self, "v0", v0)
        object.__setattr__(self, "v1", v1)

    def vector(self, index: int) -> np.ndarray:
        return self.v0 if index == 0 else self.v1


COMPUTATIONAL = Basis2(np.array([1, 0]), np.array([0, 1]), ("0", "1"))
PLUS_MINUS = Basis2(
    np.array([1, 1]) / np.sqrt(2),
    np.array([1, -1]) / np.sqrt(2),
    ("plus", "minus"),
)


def meas_basis_mu_nu(theta: float) -> Basis2:
    """
    The {mu(theta), nu(theta)} basis.

    mu = cos(theta/2)|0> + sin(theta/2)|1>
    nu = sin(theta/2)|0> - cos(theta/2)|1>
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return Basis2(np.array([c, s]), np.array([s, -c]), ("mu", "nu"))


class OutcomeSource:
    """Supplies measurement outcome indices, sampled or forced."""

    def choose(self, probabilities: Tuple[float, float]) -> int:
        raise NotImplementedError


class SampledOutcomes(OutcomeSource):
    """
    Draw outcomes with the Born rule from a seeded PCG64 generator.

    Identical seeds give identical outcome sequences.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = np.random.Generator(np.random.PCG64(seed))

    def choose(self, probabilities: Tuple[float, float]) -> int:
        return 0 if self._rng.random() < probabilities[0] else 1


class ForcedOutcomes(OutcomeSource):
    """Hand out a fixed sequence of outcome indices, one per measurement."""

    def __init__(self, indices: Sequence[int]):
        for index in indices:
            if index not in (0, 1):
                raise QMathError(f"Forced outcome index must be 0 or 1, got {index}")
        self.indices = tuple(indices)
        self._iter: Iterator[int] = iter(self.indices)

    def choose(self, probabilities: Tuple[float, float]) -> int:
        try:
            index = next(self._iter)
        except StopIteration:
            raise QMathError("Forced outcome sequence exhausted") from None
        if probabilities[index] < MIN_BRANCH_PROBABILITY:
            raise ImpossibleBranchError(
                f"Forced outcome {index} has probability {probabilities[index]:.3e}"
            )
        return index


def sampled(seed: int) -> SampledOutcomes:
    return SampledOutcomes(seed)


def forced(*indices: int) -> ForcedOutcomes:
    return ForcedOutcomes(indices)


class Measurement(NamedTuple):
    """Result of a single-qubit projective measurement."""

    outcome: str
    index: int
    probability: float
    post_state: StateVec
    residual: Optional[StateVec]


def measure(
    state: StateVec,
    qubit: Union[str, int],
    basis: Basis2,
    source: OutcomeSource,
) -> Measurement:
    """
    Measure one qubit of a normalized register in a two-outcome basis.

    Args:
        state: Register to measure.
        qubit: Label or index of the measured qubit.
        basis: Orthonormal measurement basis.
        source: Where the outcome index comes from.

    Returns:
        Measurement with the outcome name, its probability, the renormalized
        register with the measured qubit collapsed onto the basis vector, and
        the renormalized residual on the remaining qubits (None for a
        single-qubit register).

    Raises:
        ImpossibleBranchError: If a forced outcome has probability < 1e-14.
    """
    (position,) = _resolve_targets(state, (qubit,))
    n = state.n_qubits
    psi = state.amps.reshape((2,) * n)

    projections = [
        np.tensordot(basis.vector(k).conj(), psi, axes=([0], [position]))
        for k in (0, 1)
    ]
    weights = [float(np.sum(np.abs(p) ** 2)) for p in projections]
    total = weights[0] + weights[1]
    if total == 0.0:
        raise QMathError("Cannot measure the zero vector")
    probabilities = (weights[0] / total, weights[1] / total)

    index = source.choose(probabilities)
    probability = probabilities[index]
    if probability < MIN_BRANCH_PROBABILITY:
        raise ImpossibleBranchError(f"Outcome {index} has probability {probability:.3e}")

    projected = projections[index] / np.sqrt(weights[index])
    collapsed = np.moveaxis(np.multiply.outer(basis.vector(index), projected), 0, position)
    post_state = replace(state, amps=collapsed.reshape(-1))

    residual = None
    if n > 1:
        rest = tuple(label for i, label in enumerate(state.labels) if i != position)
        residual = StateVec(projected.reshape(-1), rest)

    logger.debug(
        "measured %s in basis %s: %s (p=%.6f)",
        state.labels[position], basis.names, basis.names[index], probability,
    )
    return Measurement(basis.names[index], index, probability, post_state, residual)
