"""
Data models for fidelity queries and sweep results.
"""

import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Union

from ..gates import CUParams, preset


class FidelityError(ValueError):
    """Raised for invalid fidelity queries or sweep ranges."""
    pass


class BranchPolicy(str, Enum):
    """Which output state enters the fidelity integrand."""

    CLASS_MU = "class_mu"
    CLASS_NU = "class_nu"
    PROBABILITY_WEIGHTED = "probability_weighted"


MIN_GRID_N = 8


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Uniform periodic grid over [0, 2 pi)^2 for the input preparation angles.

    Attributes:
        grid_n: Points per axis.
    """

    grid_n: int = 64

    def __post_init__(self):
        if int(self.grid_n) < MIN_GRID_N:
            raise FidelityError(f"grid_n must be >= {MIN_GRID_N}, got {self.grid_n}")


@dataclass(frozen=True)
class FidelityQuery:
    """
    One average-fidelity evaluation.

    Attributes:
        params: Target CU parameters.
        delta: Imperfection parameter of the switch gates.
        branch_policy: Which branch output is compared.
        integrator: Quadrature settings.
    """

    params: CUParams
    delta: float
    branch_policy: BranchPolicy = BranchPolicy.CLASS_MU
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self):
        try:
            object.__setattr__(self, "branch_policy", BranchPolicy(self.branch_policy))
        except ValueError:
            raise FidelityError(f"Unknown branch policy {self.branch_policy!r}") from None

    @classmethod
    def for_preset(
        cls,
        name: str,
        delta: float,
        branch_policy: Union[BranchPolicy, str] = BranchPolicy.CLASS_MU,
        integrator: IntegratorConfig = None,
    ) -> "FidelityQuery":
        return cls(
            params=preset(name).params,
            delta=delta,
            branch_policy=branch_policy,
            integrator=integrator or IntegratorConfig(),
        )


@dataclass
class FidelityCurve:
    """
    Average fidelity against delta for several gates.

    Attributes:
        deltas: Imperfection values, in sweep order.
        fidelities: Gate name -> fidelity per delta.
    """

    deltas: List[float]
    fidelities: Dict[str, List[float]] = field(default_factory=dict)

    @property
    def gate_names(self) -> List[str]:
        return list(self.fidelities)

    def to_csv(self) -> str:
        """CSV text: header delta,F_<gate>,..., one row per delta, %.12g values, LF endings."""
        out = io.StringIO()
        out.write(",".join(["delta"] + [f"F_{name}" for name in self.gate_names]) + "\n")
        for i, delta in enumerate(self.deltas):
            row = [delta] + [self.fidelities[name][i] for name in self.gate_names]
            out.write(",".join("%.12g" % value for value in row) + "\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "FidelityCurve":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise FidelityError("Empty fidelity CSV")
        header = lines[0].split(",")
        if header[0] != "delta" or not all(h.startswith("F_") for h in header[1:]):
            raise FidelityError(f"Unexpected fidelity CSV header: {lines[0]!r}")
        names = [h[2:] for h in header[1:]]
        curve = cls(deltas=[], fidelities={name: [] for name in names})
        for line in lines[1:]:
            values = [float(v) for v in line.split(",")]
            curve.deltas.append(values[0])
            for name, value in zip(names, values[1:]):
                curve.fidelities[name].append(value)
        return curve

    def to_dict(self) -> dict:
        return {"deltas": list(self.deltas), "fidelities": dict(self.fidelities)}

    def column(self, name: str) -> Sequence[float]:
        return self.fidelities[name]
