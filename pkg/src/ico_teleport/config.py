"""
Configuration management for ICO Teleport.

Loads settings from environment variables and provides defaults.
"""

import os
from dataclasses import dataclass, field

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DEFAULT_SEED = 20240607

BRANCH_POLICIES = ("class_mu", "class_nu", "probability_weighted")

OUTPUT_FORMATS = ("json", "csv")


@dataclass
class SimulationConfig:
    """Configuration for protocol and photonic verification runs."""

    seed: int = field(default_factory=lambda: int(os.getenv("ICO_TELEPORT_SEED", str(DEFAULT_SEED))))
    tolerance: float = field(default_factory=lambda: float(os.getenv("ICO_TELEPORT_TOLERANCE", "1e-9")))
    trials: int = field(default_factory=lambda: int(os.getenv("ICO_TELEPORT_TRIALS", "100")))


@dataclass
class FidelityConfig:
    """Configuration for average-fidelity sweeps."""

    grid_n: int = field(default_factory=lambda: int(os.getenv("ICO_TELEPORT_GRID_N", "64")))
    delta_min: float = -0.5
    delta_max: float = 0.5
    steps: int = 101
    branch_policy: str = field(
        default_factory=lambda: os.getenv("ICO_TELEPORT_BRANCH_POLICY", "class_mu")
    )


@dataclass
class OutputConfig:
    """Configuration for output settings."""

    output_dir: str = field(default_factory=lambda: os.getenv("ICO_TELEPORT_OUTPUT_DIR", "./output"))
    format: str = "csv"


@dataclass
class Config:
    """Main configuration class combining all settings."""

    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    fidelity: FidelityConfig = field(default_factory=FidelityConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def validate(self) -> list[str]:
        """Validate the configuration and return list of errors."""
        errors = []

        if self.fidelity.grid_n < 8:
            errors.append(f"ICO_TELEPORT_GRID_N must be at least 8, got {self.fidelity.grid_n}")
        if self.fidelity.steps < 2:
            errors.append(f"Sweep needs at least 2 steps, got {self.fidelity.steps}")
        if self.fidelity.branch_policy not in BRANCH_POLICIES:
            errors.append(
                f"ICO_TELEPORT_BRANCH_POLICY must be one of {', '.join(BRANCH_POLICIES)}, "
                f"got {self.fidelity.branch_policy!r}"
            )
        if not self.simulation.tolerance > 0:
            errors.append(f"ICO_TELEPORT_TOLERANCE must be positive, got {self.simulation.tolerance}")
        if not 0 <= self.simulation.seed < 2 ** 64:
            errors.append(f"ICO_TELEPORT_SEED must fit in 64 unsigned bits, got {self.simulation.seed}")
        if self.simulation.trials < 1:
            errors.append(f"ICO_TELEPORT_TRIALS must be at least 1, got {self.simulation.trials}")
        if self.output.format not in OUTPUT_FORMATS:
            errors.append(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}")

        return errors


def get_config() -> Config:
    """Get the current configuration."""
    return Config()
