"""
Dense operators, unit axes, rotations and phase-insensitive comparison.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

# Largest register the dense representation accepts
MAX_QUBITS = 8

DEFAULT_TOL = 1e-9

# Unit-norm acceptance for user-supplied axes
UNIT_TOL = 1e-9


class QMathError(ValueError):
    """Raised on shape, dimension, label or normalization problems."""
    pass


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


@dataclass(frozen=True, eq=False)
class Operator:
    """
    Dense complex matrix acting on a register of qubits.

    The matrix is copied on construction and frozen, so an Operator can be
    shared freely between threads.

    Attributes:
        matrix: dim x dim complex array, dim a power of two.
    """

    matrix: np.ndarray

    # numpy scalars defer to __rmul__ instead of broadcasting over the object
    __array_ufunc__ = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise QMathError(f"Operator matrix must be square, got shape {m.shape}")
        if not _is_power_of_two(m.shape[0]):
            raise QMathError(f"Operator dimension must be a power of two, got {m.shape[0]}")
        if m.shape[0] > 2 ** MAX_QUBITS:
            raise QMathError(f"Operator acts on more than {MAX_QUBITS} qubits")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def dagger(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def transpose(self) -> "Operator":
        return Operator(self.matrix.T)

    def is_unitary(self, tol: float = DEFAULT_TOL) -> bool:
        """Check ||U^dagger U - I||_max <= tol."""
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(self.dim)))) <= tol

    def is_hermitian(self, tol: float = DEFAULT_TOL) -> bool:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) <= tol

    def distance(self, other: "Operator") -> float:
        """Max-norm distance to another operator of the same shape."""
        if self.matrix.shape != other.matrix.shape:
            raise QMathError(f"Shape mismatch: {self.matrix.shape} vs {other.matrix.shape}")
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def is_close(self, other: "Operator", tol: float = DEFAULT_TOL) -> bool:
        return self.distance(other) <= tol

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if self.dim != other.dim:
            raise QMathError(f"Cannot compose operators of dim {self.dim} and {other.dim}")
        return Operator(self.matrix @ other.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        if isinstance(scalar, Operator):
            return NotImplemented
        return Operator(complex(scalar) * self.matrix)

    __rmul__ = __mul__

    def __add__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if self.dim != other.dim:
            raise QMathError(f"Cannot add operators of dim {self.dim} and {other.dim}")
        return Operator(self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-1.0) * other

    def __neg__(self) -> "Operator":
        return (-1.0) * self

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim})"


@dataclass(frozen=True)
class UnitVec3:
    """
    Real unit vector in three dimensions (a rotation axis).

    Attributes:
        x, y, z: Cartesian components; x^2 + y^2 + z^2 = 1 within UNIT_TOL.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        components = (float(self.x), float(self.y), float(self.z))
        if not all(np.isfinite(components)):
            raise QMathError(f"Axis components must be finite, got {components}")
        norm = float(np.sqrt(sum(c * c for c in components)))
        if abs(norm - 1.0) > UNIT_TOL:
            raise QMathError(f"Axis {components} is not a unit vector (norm {norm:.12g})")
        object.__setattr__(self, "x", components[0])
        object.__setattr__(self, "y", components[1])
        object.__setattr__(self, "z", components[2])

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "UnitVec3":
        """Build a unit vector pointing along (x, y, z)."""
        norm = float(np.sqrt(x * x + y * y + z * z))
        if norm == 0.0:
            raise QMathError("Cannot normalize the zero vector")
        return cls(x / norm, y / norm, z / norm)

    @classmethod
    def coerce(cls, value: Union["UnitVec3", Sequence[float]]) -> "UnitVec3":
        if isinstance(value, UnitVec3):
            return value
        x, y, z = value
        return cls(x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def dot(self, other: "UnitVec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def pauli(self) -> Operator:
        """The operator n . sigma."""
        return pauli_combination(self.as_array())

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}

    @classmethod
    def from_dict(cls, data: dict) -> "UnitVec3":
        return cls(float(data["x"]), float(data["y"]), float(data["z"]))


I2 = Operator(np.eye(2))
X = Operator(np.array([[0, 1], [1, 0]]))
Y = Operator(np.array([[0, -1j], [1j, 0]]))
Z = Operator(np.array([[1, 0], [0, -1]]))
H = Operator(np.array([[1, 1], [1, -1]]) / np.sqrt(2))

# The Pauli vector sigma = (X, Y, Z)
PAULI = (X, Y, Z)

X_AXIS = UnitVec3(1.0, 0.0, 0.0)
Y_AXIS = UnitVec3(0.0, 1.0, 0.0)
Z_AXIS = UnitVec3(0.0, 0.0, 1.0)


def identity(n_qubits: int = 1) -> Operator:
    return Operator(np.eye(2 ** n_qubits))


def pauli_combination(vector: Iterable[float]) -> Operator:
    """
    Return v . sigma for an arbitrary (not necessarily unit) real 3-vector.

    Args:
        vector: Components (v_x, v_y, v_z).

    Returns:
        The 2x2 operator v_x X + v_y Y + v_z Z.
    """
    vx, vy, vz = (float(v) for v in vector)
    return Operator(vx * X.matrix + vy * Y.matrix + vz * Z.matrix)


def _rotation_matrix(vector: np.ndarray, theta: float) -> np.ndarray:
    return (
        np.cos(theta / 2) * I2.matrix
        - 1j * np.sin(theta / 2) * pauli_combination(vector).matrix
    )


def rotation(n: Union[UnitVec3, Sequence[float]], theta: float) -> Operator:
    """
    Single-qubit rotation by theta around the axis n.

    R_n(theta) = cos(theta/2) I - i sin(theta/2) (n . sigma)

    Args:
        n: Unit rotation axis.
        theta: Rotation angle in radians.

    Returns:
        The SU(2) rotation operator.

    Raises:
        QMathError: If n is not a unit vector within UNIT_TOL.
    """
    axis = UnitVec3.coerce(n)
    return Operator(_rotation_matrix(axis.as_array(), theta))


def rz(theta: float) -> Operator:
    return rotation(Z_AXIS, theta)


def ry(theta: float) -> Operator:
    return rotation(Y_AXIS, theta)


def rx(theta: float) -> Operator:
    return rotation(X_AXIS, theta)


def tensor(factors: Sequence[Operator]) -> Operator:
    """
    Kronecker product of operators, leftmost factor on the most significant qubit.

    Raises:
        QMathError: If no factors are given.
    """
    factors = list(factors)
    if not factors:
        raise QMathError("tensor() needs at least one factor")
    return Operator(reduce(np.kron, (f.matrix for f in factors)))


def _flat(value) -> np.ndarray:
    if isinstance(value, Operator):
        return value.matrix.ravel()
    amps = getattr(value, "amps", None)
    if amps is not None:
        return np.asarray(amps).ravel()
    return np.asarray(value, dtype=np.complex128).ravel()


def _shape(value) -> Tuple[int, ...]:
    if isinstance(value, Operator):
        return value.matrix.shape
    amps = getattr(value, "amps", None)
    if amps is not None:
        return np.asarray(amps).shape
    return np.asarray(value).shape


def global_phase_deviation(a, b) -> Tuple[Optional[complex], float]:
    """
    Best phase e^{i phi} with b ~ e^{i phi} a, and the residual max-norm deviation.

    The phase is <a, b> / |<a, b>| over the flattened inner product.

    Args:
        a: Operator, StateVec or array.
        b: Same shape as a.

    Returns:
        (phase, deviation). phase is None when the inner product vanishes while
        either argument is nonzero; deviation is then the larger max-norm.

    Raises:
        QMathError: On shape mismatch.
    """
    if _shape(a) != _shape(b):
        raise QMathError(f"Shape mismatch: {_shape(a)} vs {_shape(b)}")
    va, vb = _flat(a), _flat(b)
    inner = np.vdot(va, vb)
    if abs(inner) < 1e-300:
        if not va.any() and not vb.any():
            return 1.0 + 0.0j, 0.0
        return None, float(max(np.max(np.abs(va)), np.max(np.abs(vb))))
    phase = complex(inner / abs(inner))
    return phase, float(np.max(np.abs(vb - phase * va)))


def equal_up_to_global_phase(a, b, tol: float = DEFAULT_TOL) -> Tuple[bool, Optional[complex]]:
    """
    Decide whether b = e^{i phi} a within tol (max-norm).

    Args:
        a: Operator or StateVec.
        b: Same kind and shape as a.
        tol: Max-norm tolerance.

    Returns:
        (True, e^{i phi}) when proportional, (False, None) otherwise.
    """
    phase, deviation = global_phase_deviation(a, b)
    if phase is None or deviation > tol:
        return False, None
    return True, phase
