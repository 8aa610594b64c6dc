"""
The two parties of a teleportation run and the classical channel between them.

Alice holds ancilla a and data qubit A, Bob holds ancilla b and data qubit B.
Each party only touches its own qubits of the shared register; every
classical message costs one cbit on the ledger.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..gates import BranchClass, CUParams, FeedForward, feedforward
from ..qmath import (
    PLUS_MINUS,
    OutcomeSource,
    StateVec,
    apply,
    meas_basis_mu_nu,
    measure,
)
from .models import AOutcome, BOutcome, ProtocolError, ResourceLedger, classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Message:
    sender: str
    receiver: str
    payload: str

    def __str__(self) -> str:
        return f"{self.sender}->{self.receiver}:{self.payload}"


class ClassicalChannel:
    """In-process one-bit message channel that bills each message to a ledger."""

    def __init__(self, ledger: ResourceLedger):
        self.ledger = ledger
        self.messages: List[Message] = []

    def send(self, sender: str, receiver: str, payload: str) -> None:
        message = Message(sender, receiver, payload)
        self.messages.append(message)
        self.ledger.cbits += 1
        logger.debug("channel: %s", message)

    def receive(self, receiver: str) -> str:
        """Latest payload addressed to receiver."""
        for message in reversed(self.messages):
            if message.receiver == receiver:
                return message.payload
        raise ProtocolError(f"No message waiting for {receiver}")

    def transcript(self) -> Tuple[str, ...]:
        return tuple(str(m) for m in self.messages)


class Alice:
    """
    Measures ancilla a in {|+>, |->}, announces it, and corrects qubit A
    once Bob's outcome arrives.
    """

    name = "alice"
    ancilla = "a"
    qubit = "A"

    def __init__(self, channel: ClassicalChannel):
        self.channel = channel
        self.outcome: Optional[AOutcome] = None

    def measure_ancilla(
        self, state: StateVec, source: OutcomeSource
    ) -> Tuple[AOutcome, float, StateVec]:
        result = measure(state, self.ancilla, PLUS_MINUS, source)
        self.outcome = AOutcome(result.outcome)
        self.channel.send(self.name, Bob.name, self.outcome.value)
        return self.outcome, result.probability, result.residual

    def branch_class(self) -> BranchClass:
        """Class from Alice's own outcome and the one Bob announced."""
        if self.outcome is None:
            raise ProtocolError("Alice has not measured her ancilla")
        return classify(self.outcome, BOutcome(self.channel.receive(self.name)))

    def feedforward(self, params: CUParams) -> FeedForward:
        return feedforward(self.branch_class(), params)

    def correct(self, state: StateVec, params: CUParams) -> StateVec:
        return apply(state, self.feedforward(params).w_a, [self.qubit])


class Bob:
    """
    Measures ancilla b in {mu, nu}, choosing the angle from Alice's message,
    announces the result and corrects qubit B.
    """

    name = "bob"
    ancilla = "b"
    qubit = "B"

    def __init__(self, channel: ClassicalChannel, theta: float):
        self.channel = channel
        self.theta = theta
        self.a_outcome: Optional[AOutcome] = None
        self.outcome: Optional[BOutcome] = None

    def basis_angle(self, a_outcome: AOutcome) -> float:
        return self.theta if a_outcome is AOutcome.PLUS else math.pi - self.theta

    def measure_ancilla(
        self, state: StateVec, source: OutcomeSource
    ) -> Tuple[BOutcome, float, float, StateVec]:
        self.a_outcome = AOutcome(self.channel.receive(self.name))
        angle = self.basis_angle(self.a_outcome)
        result = measure(state, self.ancilla, meas_basis_mu_nu(angle), source)
        self.outcome = BOutcome(result.outcome)
        self.channel.send(self.name, Alice.name, self.outcome.value)
        return self.outcome, angle, result.probability, result.residual

    def branch_class(self) -> BranchClass:
        """Class from Bob's own outcome and the one Alice announced."""
        if self.outcome is None or self.a_outcome is None:
            raise ProtocolError("Bob has not measured his ancilla")
        return classify(self.a_outcome, self.outcome)

    def feedforward(self, params: CUParams) -> FeedForward:
        return feedforward(self.branch_class(), params)

    def correct(self, state: StateVec, params: CUParams) -> StateVec:
        return apply(state, self.feedforward(params).w_b, [self.qubit])
