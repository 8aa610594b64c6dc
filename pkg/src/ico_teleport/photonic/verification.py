"""
Cross-checks of the optical layer: coincidence states against the abstract
protocol, and the waveplate gadget identities.
"""

import logging
import math

import numpy as np

from ..checks import CheckResult, VerificationReport
from ..gates import CUParams, cu_gate
from ..protocol import InputQubit, forced_branch, run_protocol
from ..qmath import X, apply, global_phase_deviation, rz
from .elements import (
    GADGET_U_A1,
    GADGET_U_A2,
    GADGET_U_A2_ANGLES,
    BackwardConvention,
    GadgetAngles,
    backward_operator,
    element_sequence_operator,
    gadget_elements,
)
from .sagnac import DetectorPair, coincidence, sagnac_run

logger = logging.getLogger(__name__)

PROBABILITY_TOL = 1e-12


def photonic_vs_abstract(
    params: CUParams,
    theta1: float,
    theta2: float,
    tol: float = 1e-9,
) -> VerificationReport:
    """
    Compare every coincidence-conditioned polarization state of an adaptive
    run with the matching abstract branch state, then apply the feed-forward
    and compare with cu_gate(params) on the prepared inputs.

    Args:
        params: Target CU parameters.
        theta1, theta2: Preparation angles of the two photons.
        tol: State tolerance.

    Returns:
        Report with branch_state, corrected_state and coincidence_probability checks.
    """
    state = sagnac_run(params, theta1, theta2, adaptive=True)
    in_a, in_b = InputQubit.from_angle(theta1), InputQubit.from_angle(theta2)
    expected = cu_gate(params).matrix @ np.kron(in_a.as_array(), in_b.as_array())

    branch_dev = corrected_dev = prob_dev = 0.0
    probabilities = {}
    failures = []
    for pair in DetectorPair:
        probability, residual = coincidence(state, pair)
        a, b = pair.ancilla_outcome
        transcript = run_protocol(params, in_a, in_b, forced_branch(a, b))

        _, dev_branch = global_phase_deviation(transcript.branch_state, residual)
        corrected = apply(residual, transcript.feedforward.operator(), ("A", "B"))
        _, dev_corrected = global_phase_deviation(corrected.amps, expected)

        probabilities[pair.value] = probability
        branch_dev = max(branch_dev, dev_branch)
        corrected_dev = max(corrected_dev, dev_corrected)
        prob_dev = max(prob_dev, abs(probability - 0.25))
        if dev_branch > tol or dev_corrected > tol:
            failures.append(
                f"{pair.value}: branch deviation {dev_branch:.3e}, corrected {dev_corrected:.3e}"
            )

    report = VerificationReport(
        name="photonic",
        details={"params": params.to_dict(), "theta1": theta1, "theta2": theta2},
    )
    report.add(CheckResult("branch_state", branch_dev, tol, failures=failures))
    report.add(CheckResult("corrected_state", corrected_dev, tol))
    report.add(
        CheckResult(
            "coincidence_probability",
            prob_dev,
            PROBABILITY_TOL,
            details={"probabilities": probabilities},
        )
    )
    return report


def reciprocity_deviation(
    angles: GadgetAngles,
    convention: BackwardConvention = BackwardConvention.TRANSPOSE,
) -> float:
    """Phase-insensitive distance between backward and forward gadget operators."""
    elements = gadget_elements(angles)
    _, deviation = global_phase_deviation(
        element_sequence_operator(elements), backward_operator(elements, convention)
    )
    return deviation


def random_reciprocal_angles(rng: np.random.Generator) -> GadgetAngles:
    """Palindromic outer plates with the middle plate at a multiple of pi/4."""
    theta, phi = rng.uniform(0.0, math.pi, size=2)
    gamma = int(rng.integers(0, 8)) * math.pi / 4
    return GadgetAngles(theta, phi, gamma, phi, theta)


def verify_gadgets(trials: int, seed: int, tol: float = 1e-10) -> VerificationReport:
    """
    Waveplate identities for Alice's switch gates, plus the backward traversal
    rules on random gadgets.

    Checks:
        gadget_u_a1: the three-plate sequence equals protocol U_A1 up to phase.
        gadget_u_a2: the nine-element sequence equals X up to phase.
        gadget_transpose: backward(angles) = forward(angles with -gamma)^T, any angles.
        gadget_reciprocity: backward = forward up to phase on the reciprocal family.
            Details count the unconstrained gadgets that are not reciprocal under
            each backward convention.
        gadget_unitarity: random gadgets are unitary.
    """
    rng = np.random.default_rng(seed)
    report = VerificationReport(name="decompose", details={"trials": trials, "seed": seed})

    _, dev_a1 = global_phase_deviation(rz(math.pi / 2), element_sequence_operator(GADGET_U_A1))
    report.add(CheckResult("gadget_u_a1", dev_a1, tol))
    _, dev_a2 = global_phase_deviation(X, element_sequence_operator(GADGET_U_A2))
    report.add(CheckResult("gadget_u_a2", dev_a2, tol))

    transpose_dev = reciprocity_dev = unitarity_dev = 0.0
    violations = {c.value: 0 for c in BackwardConvention}
    for _ in range(trials):
        free = GadgetAngles(*rng.uniform(0.0, 2 * math.pi, size=5))
        mirrored = GadgetAngles(free.theta1, free.phi1, -free.gamma, free.phi2, free.theta2)
        backward = backward_operator(gadget_elements(free))
        forward = element_sequence_operator(gadget_elements(free))
        transpose_dev = max(
            transpose_dev,
            backward.distance(element_sequence_operator(gadget_elements(mirrored)).transpose()),
        )
        unitarity_dev = max(
            unitarity_dev,
            float(np.max(np.abs(forward.dagger().matrix @ forward.matrix - np.eye(2)))),
        )
        for convention in BackwardConvention:
            if reciprocity_deviation(free, convention) > tol:
                violations[convention.value] += 1
        reciprocity_dev = max(reciprocity_dev, reciprocity_deviation(random_reciprocal_angles(rng)))

    report.add(CheckResult("gadget_transpose", transpose_dev, tol))
    report.add(
        CheckResult(
            "gadget_reciprocity",
            max(
                reciprocity_dev,
                reciprocity_deviation(GADGET_U_A2_ANGLES),
            ),
            tol,
            details={"unconstrained_nonreciprocal": violations},
        )
    )
    report.add(CheckResult("gadget_unitarity", unitarity_dev, tol))
    return report

