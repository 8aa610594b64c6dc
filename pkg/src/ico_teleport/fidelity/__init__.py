"""
Average gate fidelity under the imperfect switch-gate model.

This module provides:
- Per-input branch fidelity from two protocol runs
- Grid quadrature of the average fidelity
- Monte Carlo estimates with standard errors
- Delta sweeps over the named presets with CSV output
"""

from .integrator import (
    DEFAULT_PRESETS,
    average_fidelity,
    branch_fidelity,
    delta_grid,
    monte_carlo_fidelity,
    sweep,
)
from .models import (
    MIN_GRID_N,
    BranchPolicy,
    FidelityCurve,
    FidelityError,
    FidelityQuery,
    IntegratorConfig,
)

__all__ = [
    "DEFAULT_PRESETS",
    "MIN_GRID_N",
    "BranchPolicy",
    "FidelityCurve",
    "FidelityError",
    "FidelityQuery",
    "IntegratorConfig",
    "average_fidelity",
    "branch_fidelity",
    "delta_grid",
    "monte_carlo_fidelity",
    "sweep",
]
