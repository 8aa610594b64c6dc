"""
Jones-calculus model of the optical teleportation setup.

This module provides:
- Waveplates, Faraday rotators and element sequences with backward traversal
- The nine-element reciprocal gadget and the waveplate catalog for U_A1 and U_A2
- SPDC source, PBS path encoding and input preparation
- Sagnac quantum switches with BS/VBS recombination (fixed or adaptive)
- Coincidence post-selection and cross-checks against the abstract protocol
"""

from .elements import (
    GADGET_U_A1,
    GADGET_U_A2,
    GADGET_U_A2_ANGLES,
    V_A_ELEMENTS,
    BackwardConvention,
    ElementKind,
    GadgetAngles,
    JonesOp,
    OpticalElement,
    PhotonicError,
    as_jones,
    backward_operator,
    element_sequence_operator,
    faraday,
    gadget_elements,
    hwp,
    qwp,
    reciprocal_gadget,
)
from .sagnac import (
    PHOTONIC_LABELS,
    DetectorPair,
    PhotonicState,
    bs,
    coincidence,
    pbs_encode,
    prepare_inputs,
    preparation_state,
    sagnac_run,
    spdc_state,
    vbs,
)
from .verification import (
    photonic_vs_abstract,
    random_reciprocal_angles,
    reciprocity_deviation,
    verify_gadgets,
)

__all__ = [
    "GADGET_U_A1",
    "GADGET_U_A2",
    "GADGET_U_A2_ANGLES",
    "PHOTONIC_LABELS",
    "V_A_ELEMENTS",
    "BackwardConvention",
    "DetectorPair",
    "ElementKind",
    "GadgetAngles",
    "JonesOp",
    "OpticalElement",
    "PhotonicError",
    "PhotonicState",
    "as_jones",
    "backward_operator",
    "bs",
    "coincidence",
    "element_sequence_operator",
    "faraday",
    "gadget_elements",
    "hwp",
    "pbs_encode",
    "photonic_vs_abstract",
    "prepare_inputs",
    "preparation_state",
    "qwp",
    "random_reciprocal_angles",
    "reciprocal_gadget",
    "reciprocity_deviation",
    "sagnac_run",
    "spdc_state",
    "vbs",
    "verify_gadgets",
]
