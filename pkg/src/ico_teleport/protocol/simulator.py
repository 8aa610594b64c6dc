"""
Step-by-step simulation of the teleportation protocol on the (a, b, A, B) register.
"""

import logging
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np

from ..gates import (
    BranchClass,
    CUParams,
    FeedForward,
    ProtocolGateSet,
    feedforward,
    protocol_gates,
    quantum_switch,
)
from ..qmath import (
    Z,
    ForcedOutcomes,
    Operator,
    OutcomeSource,
    StateVec,
    UnitVec3,
    apply,
    identity,
    tensor,
)
from .models import (
    AOutcome,
    AnnihilatedBranchError,
    BOutcome,
    BranchOutcome,
    InputQubit,
    ProtocolError,
    ProtocolTranscript,
    ResourceLedger,
)
from .parties import Alice, Bob, ClassicalChannel

logger = logging.getLogger(__name__)

REGISTER = ("a", "b", "A", "B")

_P0 = Operator(np.diag([1.0, 0.0]))
_P1 = Operator(np.diag([0.0, 1.0]))

# Post-switch norms below this count as an annihilated branch
_MIN_NORM = 1e-14


class AncillaMeasurement(NamedTuple):
    outcome: BranchOutcome
    probability: float
    post_state: StateVec


def forced_branch(a_outcome: AOutcome, b_outcome: BOutcome) -> ForcedOutcomes:
    """Outcome source that forces the given joint ancilla outcome."""
    a_index = 0 if AOutcome(a_outcome) is AOutcome.PLUS else 1
    b_index = 0 if BOutcome(b_outcome) is BOutcome.MU else 1
    return ForcedOutcomes((a_index, b_index))


def prepare_initial(in_a: InputQubit, in_b: InputQubit) -> StateVec:
    """
    (|00>_ab + i|11>_ab)/sqrt(2) (x) |phi>_A (x) |phi>_B in register order (a, b, A, B).
    """
    for q in (in_a, in_b):
        if not isinstance(q, InputQubit):
            raise ProtocolError(f"Expected InputQubit, got {type(q).__name__}")
    ancillas = np.array([1.0, 0.0, 0.0, 1j]) / math.sqrt(2)
    amps = np.kron(np.kron(ancillas, in_a.as_array()), in_b.as_array())
    return StateVec(amps, REGISTER)


def apply_local_V(state: StateVec, gates: ProtocolGateSet) -> StateVec:
    state = apply(state, gates.v_a, ["A"])
    return apply(state, gates.v_b, ["B"])


def switch_operator(gates: ProtocolGateSet) -> Operator:
    """
    The joint action of both switches on (a, b, A, B).

    |00><00|_ab (x) M0 + |11><11|_ab (x) M1, identity on the |01>, |10>
    ancilla components (which carry no amplitude in the protocol).
    """
    return (
        tensor([_P0, _P0, gates.order_0()])
        + tensor([_P1, _P1, gates.order_1()])
        + tensor([_P0, _P1, identity(2)])
        + tensor([_P1, _P0, identity(2)])
    )


def apply_switches(state: StateVec, gates: ProtocolGateSet) -> StateVec:
    return apply(state, switch_operator(gates), REGISTER)


def switch_superposition(branch: BranchClass, theta: float, gates: ProtocolGateSet) -> Operator:
    """
    Superposed switch orders seen by a branch class, as an operator on (A, B).

    class_mu: cos(theta/2) M0 + i sin(theta/2) M1
    class_nu: sin(theta/2) M0 - i cos(theta/2) M1
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    m0, m1 = gates.order_0(), gates.order_1()
    if BranchClass(branch) is BranchClass.CLASS_MU:
        return c * m0 + (1j * s) * m1
    return s * m0 + (-1j * c) * m1


def effective_operator(
    params: CUParams,
    branch: BranchClass,
    gates: Optional[ProtocolGateSet] = None,
) -> Operator:
    """
    Linear map W S (V_A (x) V_B) that a branch class applies to the input pair.

    With ideal gates, feedforward(branch, params).phase * G = cu_gate(params).
    Feed-forward is always the ideal correction.
    """
    if gates is None:
        gates = protocol_gates(params)
    ff = feedforward(branch, params)
    return ff.operator() @ switch_superposition(branch, params.theta, gates) @ gates.local_v()


def measure_ancillas(
    state: StateVec,
    theta: float,
    source: OutcomeSource,
    channel: Optional[ClassicalChannel] = None,
    parties: Optional[Tuple[Alice, Bob]] = None,
) -> AncillaMeasurement:
    """
    Alice measures a in {|+>, |->} and tells Bob; Bob measures b in
    {mu(theta), nu(theta)} after |+> or {mu(pi - theta), nu(pi - theta)}
    after |->, and tells Alice.

    Args:
        state: Post-switch register (a, b, A, B).
        theta: Rotation angle of the target unitary.
        source: Outcome source for both measurements, a first.
        channel: Channel to bill the two messages to. A private one is used if omitted.
        parties: Alice and Bob to measure with, sharing one channel. Overrides channel.

    Returns:
        (outcome, joint probability, renormalized (A, B) residual).

    Raises:
        ImpossibleBranchError: If a forced outcome has zero probability.
    """
    if parties is None:
        if channel is None:
            channel = ClassicalChannel(ResourceLedger())
        parties = (Alice(channel), Bob(channel, theta))
    alice, bob = parties

    a_outcome, p_a, state = alice.measure_ancilla(state, source)
    b_outcome, angle, p_b, residual = bob.measure_ancilla(state, source)

    outcome = BranchOutcome(a_outcome, b_outcome, angle)
    return AncillaMeasurement(outcome, p_a * p_b, residual)


def run_protocol(
    params: CUParams,
    in_a: InputQubit,
    in_b: InputQubit,
    source: OutcomeSource,
    gates: Optional[ProtocolGateSet] = None,
) -> ProtocolTranscript:
    """
    Run the full teleportation of cu_gate(params) on |in_a>|in_b>.

    Pipeline: shared ancilla pair, local V gates, both quantum switches,
    adaptive ancilla measurements, then the class correction on A and B.

    Args:
        params: Target CU parameters.
        in_a: Alice's data qubit.
        in_b: Bob's data qubit.
        source: Sampled or forced outcome source.
        gates: Gate set override (e.g. imperfect gates). Defaults to protocol_gates(params).
            Non-unitary sets are renormalized after the switches.

    Returns:
        ProtocolTranscript whose final_state satisfies
        cu_gate(params)|in_a in_b> = global_phase * final_state for ideal gates.

    Raises:
        AnnihilatedBranchError: If the switches leave a zero-norm state.
        ImpossibleBranchError: If a forced outcome has zero probability.
    """
    if gates is None:
        gates = protocol_gates(params)

    ledger = ResourceLedger()
    channel = ClassicalChannel(ledger)
    alice, bob = Alice(channel), Bob(channel, params.theta)

    state = prepare_initial(in_a, in_b)
    ledger.ebits += 1

    state = apply_local_V(state, gates)
    state = apply_switches(state, gates)
    ledger.switches += 2

    norm = state.norm()
    if norm < _MIN_NORM:
        raise AnnihilatedBranchError(f"Switch output has norm {norm:.3e}")
    if abs(norm - 1.0) > 1e-12:
        state = state.normalized()

    measured = measure_ancillas(state, params.theta, source, parties=(alice, bob))

    # Each party picks its correction from its own outcome and the received one
    ff_a, ff_b = alice.feedforward(params), bob.feedforward(params)
    if ff_a.branch_class is not ff_b.branch_class:
        logger.warning(
            "parties disagree on the branch: alice=%s bob=%s",
            ff_a.branch_class.value,
            ff_b.branch_class.value,
        )
    final = alice.correct(measured.post_state, params)
    final = bob.correct(final, params)
    ff = FeedForward(
        branch_class=measured.outcome.branch_class,
        w_a=ff_a.w_a,
        w_b=ff_b.w_b,
        phase=feedforward(measured.outcome.branch_class, params).phase,
    )

    logger.debug(
        "run: outcome=(%s, %s) class=%s p=%.6f",
        measured.outcome.a_outcome.value,
        measured.outcome.b_outcome.value,
        measured.outcome.branch_class.value,
        measured.probability,
    )
    return ProtocolTranscript(
        outcome=measured.outcome,
        branch_probability=measured.probability,
        feedforward=ff,
        global_phase=ff.phase,
        branch_state=measured.post_state,
        final_state=final,
        ledger=ledger,
        messages=channel.transcript(),
    )


def rzn(theta: float, n) -> Operator:
    """Two-qubit rotation cos(theta/2) I (x) I - i sin(theta/2) Z (x) (n.sigma)."""
    axis = UnitVec3.coerce(n)
    return math.cos(theta / 2) * identity(2) + (-1j * math.sin(theta / 2)) * tensor([Z, axis.pauli()])
