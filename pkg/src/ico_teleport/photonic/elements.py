"""
Jones-calculus optical elements and the reciprocal waveplate gadget.

Waveplates use the SU(2) form R_y(2t) R_z(phi) R_y(-2t) in the (H, V) basis.
Faraday rotators are R_y(chi) and are non-reciprocal: a photon crossing one
backwards sees the same matrix, while a reciprocal element is seen transposed.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import List, Sequence, Union

from ..qmath import I2, Z, Operator, ry, rz

logger = logging.getLogger(__name__)

# Polarization operators are plain 2x2 operators on (H, V)
JonesOp = Operator


class PhotonicError(ValueError):
    """Raised for impossible post-selections or malformed optical inputs."""
    pass


def hwp(theta: float) -> JonesOp:
    """Half-wave plate with fast axis at theta: R_y(2 theta) R_z(pi) R_y(-2 theta)."""
    return ry(2 * theta) @ rz(math.pi) @ ry(-2 * theta)


def qwp(theta: float) -> JonesOp:
    """Quarter-wave plate with fast axis at theta: R_y(2 theta) R_z(pi/2) R_y(-2 theta)."""
    return ry(2 * theta) @ rz(math.pi / 2) @ ry(-2 * theta)


def faraday(chi: float) -> JonesOp:
    """Faraday rotator with circular retardance chi: R_y(chi)."""
    return ry(chi)


class ElementKind(str, Enum):
    HWP = "hwp"
    QWP = "qwp"
    FARADAY = "faraday"


_FORWARD = {
    ElementKind.HWP: hwp,
    ElementKind.QWP: qwp,
    ElementKind.FARADAY: faraday,
}


class BackwardConvention(str, Enum):
    """
    Matrix a reciprocal element presents to a counter-propagating photon.

    TRANSPOSE is M^T in the (H, V) basis and is the one the Sagnac model uses.
    Z_TRANSPOSE is Z M^T Z, kept so the reciprocity property can be audited
    against it.
    """

    TRANSPOSE = "transpose"
    Z_TRANSPOSE = "z_transpose"


@dataclass(frozen=True)
class OpticalElement:
    """
    One element on a polarization path.

    Attributes:
        kind: Waveplate or Faraday rotator.
        angle: Fast-axis angle for waveplates, retardance for Faraday rotators.
    """

    kind: ElementKind
    angle: float

    @property
    def reciprocal(self) -> bool:
        return self.kind is not ElementKind.FARADAY

    def forward(self) -> JonesOp:
        return _FORWARD[self.kind](self.angle)

    def backward(self, convention: BackwardConvention = BackwardConvention.TRANSPOSE) -> JonesOp:
        """Matrix seen by a counter-propagating photon."""
        forward = self.forward()
        if not self.reciprocal:
            return forward
        if BackwardConvention(convention) is BackwardConvention.Z_TRANSPOSE:
            return Z @ forward.transpose() @ Z
        return forward.transpose()

    @classmethod
    def half_wave(cls, theta: float) -> "OpticalElement":
        return cls(ElementKind.HWP, theta)

    @classmethod
    def quarter_wave(cls, theta: float) -> "OpticalElement":
        return cls(ElementKind.QWP, theta)

    @classmethod
    def rotator(cls, chi: float) -> "OpticalElement":
        return cls(ElementKind.FARADAY, chi)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "angle": self.angle}

    def __str__(self) -> str:
        return f"{self.kind.value.upper()}({self.angle:.6g})"


def element_sequence_operator(elements: Sequence[OpticalElement]) -> JonesOp:
    """
    Forward operator of an element list written left to right as a product.

    The rightmost element acts first; an empty list is the identity.
    """
    return reduce(lambda acc, e: acc @ e.forward(), elements, I2)


def backward_operator(
    elements: Sequence[OpticalElement],
    convention: BackwardConvention = BackwardConvention.TRANSPOSE,
) -> JonesOp:
    """
    Operator for a photon traversing the same elements in the opposite direction.

    The traversal order is reversed, reciprocal elements contribute their
    backward matrix under the convention and Faraday rotators their forward matrix.
    """
    return reduce(lambda acc, e: acc @ e.backward(convention), reversed(list(elements)), I2)


@dataclass(frozen=True)
class GadgetAngles:
    """Orientations of the five adjustable plates of the reciprocal gadget."""

    theta1: float
    phi1: float
    gamma: float
    phi2: float
    theta2: float

    def __post_init__(self):
        values = (self.theta1, self.phi1, self.gamma, self.phi2, self.theta2)
        if not all(math.isfinite(v) for v in values):
            raise PhotonicError(f"Gadget angles must be finite, got {values}")

    def to_dict(self) -> dict:
        return {
            "theta1": self.theta1,
            "phi1": self.phi1,
            "gamma": self.gamma,
            "phi2": self.phi2,
            "theta2": self.theta2,
        }


def gadget_elements(angles: GadgetAngles) -> List[OpticalElement]:
    """
    QWP(t1) HWP(p1) F(-pi/2) QWP(pi/2) HWP(g) QWP(pi/2) F(pi/2) HWP(p2) QWP(t2).
    """
    return [
        OpticalElement.quarter_wave(angles.theta1),
        OpticalElement.half_wave(angles.phi1),
        OpticalElement.rotator(-math.pi / 2),
        OpticalElement.quarter_wave(math.pi / 2),
        OpticalElement.half_wave(angles.gamma),
        OpticalElement.quarter_wave(math.pi / 2),
        OpticalElement.rotator(math.pi / 2),
        OpticalElement.half_wave(angles.phi2),
        OpticalElement.quarter_wave(angles.theta2),
    ]


def reciprocal_gadget(angles: GadgetAngles) -> JonesOp:
    """Forward operator of the nine-element gadget for the given plate angles."""
    return element_sequence_operator(gadget_elements(angles))


def as_jones(value: Union[Operator, Sequence[OpticalElement]]) -> JonesOp:
    if isinstance(value, Operator):
        if value.dim != 2:
            raise PhotonicError(f"Polarization operator must be 2x2, got dim {value.dim}")
        return value
    return element_sequence_operator(value)


# Waveplate realisations of Alice's switch gates
GADGET_U_A1: List[OpticalElement] = [
    OpticalElement.quarter_wave(math.pi / 4),
    OpticalElement.half_wave(3 * math.pi / 8),
    OpticalElement.quarter_wave(math.pi / 4),
]
GADGET_U_A2_ANGLES = GadgetAngles(
    theta1=3 * math.pi / 4,
    phi1=7 * math.pi / 8,
    gamma=3 * math.pi / 4,
    phi2=3 * math.pi / 8,
    theta2=math.pi / 4,
)
GADGET_U_A2: List[OpticalElement] = gadget_elements(GADGET_U_A2_ANGLES)

# Realisation of V_A = X by a single plate
V_A_ELEMENTS: List[OpticalElement] = [OpticalElement.half_wave(math.pi / 4)]
