"""
Average gate fidelity of the teleported CU gate under imperfect switch gates.

The practical branch output is renormalized before the overlap with the ideal
output, and both use the ideal feed-forward. Averages are taken over input
pairs (cos t1, sin t1) (x) (cos t2, sin t2) on a uniform periodic grid.
"""

import logging
import math
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from ..gates import BranchClass, CUParams, imperfect_gates, preset
from ..protocol import (
    AnnihilatedBranchError,
    AOutcome,
    BOutcome,
    InputQubit,
    effective_operator,
    forced_branch,
    run_protocol,
)
from ..qmath import ImpossibleBranchError
from .models import (
    BranchPolicy,
    FidelityCurve,
    FidelityError,
    FidelityQuery,
    IntegratorConfig,
)

logger = logging.getLogger(__name__)

DEFAULT_PRESETS = ("cnot", "cy", "cz", "ch")

# Squared norms below this mean the practical branch vanished
_MIN_NORM_SQ = 1e-28

_MC_CHUNK = 1 << 16

# Outcome used to represent each class when a single run is needed
_CLASS_OUTCOME = {
    BranchClass.CLASS_MU: (AOutcome.PLUS, BOutcome.MU),
    BranchClass.CLASS_NU: (AOutcome.PLUS, BOutcome.NU),
}


def _run_pair(
    params: CUParams, delta: float, branch: BranchClass, in_a: InputQubit, in_b: InputQubit
):
    a, b = _CLASS_OUTCOME[branch]
    ideal = run_protocol(params, in_a, in_b, forced_branch(a, b))
    try:
        practical = run_protocol(
            params, in_a, in_b, forced_branch(a, b), gates=imperfect_gates(params, delta)
        )
    except ImpossibleBranchError as e:
        raise AnnihilatedBranchError(f"Practical {branch.value} branch vanished at delta={delta}") from e
    overlap = abs(np.vdot(ideal.final_state.amps, practical.final_state.amps)) ** 2
    return float(overlap), practical.branch_probability


def branch_fidelity(
    params: CUParams,
    delta: float,
    branch: Union[BranchClass, BranchPolicy, str],
    theta1: float,
    theta2: float,
) -> float:
    """
    Squared overlap of ideal and practical outputs for one input pair.

    Runs the protocol twice on (cos t1, sin t1) (x) (cos t2, sin t2), once with
    the ideal switch gates and once with imperfect_gates(params, delta), both
    through the same forced branch and with the ideal corrections.

    Args:
        params: Target CU parameters.
        delta: Imperfection parameter.
        branch: class_mu, class_nu or probability_weighted.
        theta1, theta2: Preparation angles.

    Returns:
        Fidelity in [0, 1].

    Raises:
        AnnihilatedBranchError: If the practical branch has zero norm.
    """
    policy = BranchPolicy(getattr(branch, "value", branch))
    in_a, in_b = InputQubit.from_angle(theta1), InputQubit.from_angle(theta2)
    if policy is not BranchPolicy.PROBABILITY_WEIGHTED:
        overlap, _ = _run_pair(params, delta, BranchClass(policy.value), in_a, in_b)
        return overlap

    total = weight_sum = 0.0
    for branch_class in BranchClass:
        try:
            overlap, joint_probability = _run_pair(params, delta, branch_class, in_a, in_b)
        except AnnihilatedBranchError:
            continue
        # each class covers two equally likely joint outcomes
        weight = 2.0 * joint_probability
        total += weight * overlap
        weight_sum += weight
    if weight_sum == 0.0:
        raise AnnihilatedBranchError(f"Both practical branches vanished at delta={delta}")
    return total / weight_sum


def _input_columns(theta1: np.ndarray, theta2: np.ndarray, outer: bool) -> np.ndarray:
    a = np.stack([np.cos(theta1), np.sin(theta1)])
    b = np.stack([np.cos(theta2), np.sin(theta2)])
    if outer:
        return np.einsum("ai,bj->abij", a, b).reshape(4, -1).astype(np.complex128)
    return np.einsum("ak,bk->abk", a, b).reshape(4, -1).astype(np.complex128)


def _class_overlaps(
    params: CUParams, delta: float, branch: BranchClass, columns: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    ideal = effective_operator(params, branch).matrix @ columns
    practical = effective_operator(params, branch, imperfect_gates(params, delta)).matrix @ columns
    ideal_sq = np.sum(np.abs(ideal) ** 2, axis=0)
    practical_sq = np.sum(np.abs(practical) ** 2, axis=0)
    inner = np.abs(np.sum(ideal.conj() * practical, axis=0)) ** 2
    safe = np.where(practical_sq > _MIN_NORM_SQ, practical_sq, 1.0)
    return inner / (ideal_sq * safe), practical_sq


def _fidelity_values(
    params: CUParams, delta: float, policy: BranchPolicy, columns: np.ndarray
) -> np.ndarray:
    if policy is not BranchPolicy.PROBABILITY_WEIGHTED:
        values, norms = _class_overlaps(params, delta, BranchClass(policy.value), columns)
        if np.min(norms) <= _MIN_NORM_SQ:
            raise AnnihilatedBranchError(f"Practical {policy.value} branch vanished at delta={delta}")
        return values

    f_mu, n_mu = _class_overlaps(params, delta, BranchClass.CLASS_MU, columns)
    f_nu, n_nu = _class_overlaps(params, delta, BranchClass.CLASS_NU, columns)
    total = n_mu + n_nu
    if np.min(total) <= _MIN_NORM_SQ:
        raise AnnihilatedBranchError(f"Both practical branches vanished at delta={delta}")
    return (n_mu * f_mu + n_nu * f_nu) / total


def _grid_columns(grid_n: int) -> np.ndarray:
    angles = 2 * math.pi * np.arange(grid_n) / grid_n
    return _input_columns(angles, angles, outer=True)


def average_fidelity(query: FidelityQuery) -> float:
    """
    Average of branch_fidelity over the uniform (grid_n x grid_n) grid on [0, 2 pi)^2.

    Each grid point is evaluated through the branch's effective operator,
    which gives the same overlap as two protocol runs. The reduction uses
    math.fsum, so the result does not depend on evaluation order.
    """
    return _average_on(query, _grid_columns(query.integrator.grid_n))


def _average_on(query: FidelityQuery, columns: np.ndarray) -> float:
    values = _fidelity_values(query.params, query.delta, query.branch_policy, columns)
    result = math.fsum(values.tolist()) / values.size
    logger.debug(
        "average fidelity delta=%g policy=%s grid=%d: %.15f",
        query.delta, query.branch_policy.value, query.integrator.grid_n, result,
    )
    return result


def monte_carlo_fidelity(query: FidelityQuery, samples: int, seed: int) -> Tuple[float, float]:
    """
    Monte Carlo estimate of the average fidelity with uniform random angles.

    Returns:
        (mean, standard error of the mean).
    """
    if samples < 2:
        raise FidelityError(f"samples must be >= 2, got {samples}")
    rng = np.random.default_rng(seed)
    chunks = []
    remaining = samples
    while remaining:
        size = min(remaining, _MC_CHUNK)
        theta = rng.uniform(0.0, 2 * math.pi, size=(2, size))
        columns = _input_columns(theta[0], theta[1], outer=False)
        chunks.append(_fidelity_values(query.params, query.delta, query.branch_policy, columns))
        remaining -= size
    values = np.concatenate(chunks)
    mean = math.fsum(values.tolist()) / samples
    stderr = float(np.std(values, ddof=1)) / math.sqrt(samples)
    return mean, stderr


def delta_grid(delta_min: float, delta_max: float, steps: int) -> np.ndarray:
    """Inclusive, evenly spaced delta values."""
    if steps < 2:
        raise FidelityError(f"steps must be >= 2, got {steps}")
    if not (math.isfinite(delta_min) and math.isfinite(delta_max)) or delta_min > delta_max:
        raise FidelityError(f"Invalid delta range [{delta_min}, {delta_max}]")
    return np.linspace(delta_min, delta_max, steps)


def sweep(
    presets: Iterable[str] = DEFAULT_PRESETS,
    delta_min: float = -0.5,
    delta_max: float = 0.5,
    steps: int = 101,
    branch_policy: Union[BranchPolicy, str] = BranchPolicy.CLASS_MU,
    integrator: Optional[IntegratorConfig] = None,
) -> FidelityCurve:
    """
    Average fidelity of each preset over an inclusive delta grid.

    Args:
        presets: Preset names, in output column order.
        delta_min, delta_max: Inclusive delta range.
        steps: Number of delta values (>= 2).
        branch_policy: Integrand branch choice.
        integrator: Quadrature settings.

    Returns:
        FidelityCurve with one column per preset.
    """
    integrator = integrator or IntegratorConfig()
    names = [preset(name).name for name in presets]
    if not names:
        raise FidelityError("sweep needs at least one preset")
    deltas = delta_grid(delta_min, delta_max, steps)
    columns = _grid_columns(integrator.grid_n)

    curve = FidelityCurve(deltas=[float(d) for d in deltas])
    for name in names:
        params = preset(name).params
        curve.fidelities[name] = [
            _average_on(FidelityQuery(params, float(delta), branch_policy, integrator), columns)
            for delta in deltas
        ]
        logger.info("swept %s over %d delta values", name, len(deltas))
    return curve

