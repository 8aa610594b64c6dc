"""
CLI entry point for ICO Teleport.

Provides commands for:
- Verifying the teleportation protocol against the target CU gate
- Sweeping the average fidelity over the imperfection parameter
- Cross-checking the photonic model against the abstract protocol
- Checking the waveplate gadget identities

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input, 3 I/O error.
"""

import json
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import click
import numpy as np

from ico_teleport import __version__
from ico_teleport.cli.report import (
    EXIT_INVALID_INPUT,
    EXIT_IO_ERROR,
    Report,
    write_text,
)
from ico_teleport.config import BRANCH_POLICIES, get_config
from ico_teleport.gates import PRESET_NAMES, CUParams, GateParameterError, preset

logger = logging.getLogger(__name__)


def _parse_vector(ctx, param, value: Optional[str]) -> Optional[Tuple[float, float, float]]:
    """Parse 'x,y,z' into three floats. Unit norm is checked later, never imposed."""
    if value is None:
        return None
    parts = [p.strip() for p in value.split(",")]
    try:
        vector = tuple(float(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"expected three comma-separated numbers, got {value!r}")
    if len(vector) != 3 or not all(math.isfinite(v) for v in vector):
        raise click.BadParameter(f"expected three finite comma-separated numbers, got {value!r}")
    return vector


def gate_options(f):
    """Options selecting a preset or explicit CU parameters."""
    options = [
        click.option(
            "--preset", "-p",
            "preset_name",
            default=None,
            type=click.Choice(PRESET_NAMES, case_sensitive=False),
            help="Named gate. Without --preset or explicit parameters all presets are used.",
        ),
        click.option("--alpha", type=float, default=None, help="Phase angle alpha (radians, default 0)."),
        click.option("--theta", type=float, default=None, help="Rotation angle theta (radians, default 0)."),
        click.option("--n", "n", default=None, callback=_parse_vector, help="Unit rotation axis 'x,y,z'."),
        click.option(
            "--n-perp",
            default=None,
            callback=_parse_vector,
            help="Unit axis orthogonal to n. Derived from n when omitted.",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def check_options(f):
    """Options shared by the verification commands."""
    options = [
        click.option("--trials", "-t", type=click.IntRange(min=1), default=None, help="Random trials. Defaults to config value."),
        click.option("--seed", "-s", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Random seed. Defaults to ICO_TELEPORT_SEED."),
        click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None, help="Tolerance. Defaults to config value."),
        click.option("--output", "-o", default=None, help="Write the JSON report here instead of stdout."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def resolve_gates(
    preset_name: Optional[str],
    alpha: Optional[float],
    theta: Optional[float],
    n: Optional[Tuple[float, float, float]],
    n_perp: Optional[Tuple[float, float, float]],
) -> List[Tuple[str, CUParams]]:
    """Turn gate options into (name, params) pairs."""
    explicit = any(v is not None for v in (alpha, theta, n, n_perp))
    if preset_name and explicit:
        raise click.UsageError("--preset cannot be combined with --alpha/--theta/--n/--n-perp")
    if preset_name:
        gate = preset(preset_name)
        return [(gate.name, gate.params)]
    if not explicit:
        return [(name, preset(name).params) for name in PRESET_NAMES]
    if n is None:
        raise click.UsageError("--n is required with explicit parameters")
    try:
        params = CUParams(alpha or 0.0, theta or 0.0, n, n_perp)
    except GateParameterError as e:
        raise click.BadParameter(str(e), param_hint="--n/--n-perp")
    return [("custom", params)]


def _check_config():
    try:
        config = get_config()
    except ValueError as e:
        click.echo(f"❌ Invalid configuration: {e}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    errors = config.validate()
    if errors:
        for error in errors:
            click.echo(f"❌ {error}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    return config


def _emit(report: Report, output: Optional[str]) -> None:
    """Write or print the report, then exit with its status."""
    text = report.to_json()
    if output is None:
        click.echo(text, nl=False)
    else:
        try:
            path = write_text(text, output)
        except OSError as e:
            click.echo(f"❌ Cannot write report: {e}", err=True)
            sys.exit(EXIT_IO_ERROR)
        for line in report.summary_lines():
            click.echo(line)
        click.echo(f"💾 Saved to: {path}")
    sys.exit(report.exit_code)


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging.")
def cli(verbose: bool):
    """ICO Teleport - Nonlocal CU gate teleportation with quantum switches."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@gate_options
@check_options
def verify(preset_name, alpha, theta, n, n_perp, trials, seed, tol, output):
    """
    Check that the protocol teleports the CU gate on every branch.

    Runs random input pairs through all four ancilla outcomes and the
    algebraic identity suite for each selected gate.
    """
    from ico_teleport.protocol import verify_appendix, verify_equivalence

    config = _check_config()
    gates = resolve_gates(preset_name, alpha, theta, n, n_perp)
    trials = trials or config.simulation.trials
    seed = config.simulation.seed if seed is None else seed
    tol = tol or config.simulation.tolerance

    report = Report("verify", settings={"trials": trials, "seed": seed, "tolerance": tol})
    try:
        for name, params in gates:
            logger.info("verifying %s", name)
            equivalence = verify_equivalence(params, trials, seed, tol)
            equivalence.name = f"{name}/equivalence"
            identities = verify_appendix(params, tol=max(tol, 1e-10))
            identities.name = f"{name}/identities"
            report.sections.extend([equivalence, identities])
    except ValueError as e:
        click.echo(f"❌ Verification failed: {e}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    _emit(report, output)


@cli.command()
@click.option(
    "--presets",
    "preset_names",
    multiple=True,
    type=click.Choice(PRESET_NAMES, case_sensitive=False),
    help="Gates to sweep (repeatable). Defaults to cnot, cy, cz, ch.",
)
@click.option("--delta-min", type=float, default=None, help="Smallest delta. Defaults to config value.")
@click.option("--delta-max", type=float, default=None, help="Largest delta. Defaults to config value.")
@click.option("--steps", type=int, default=None, help="Number of delta values (>= 2).")
@click.option("--grid-n", type=int, default=None, help="Quadrature points per axis (>= 8).")
@click.option(
    "--branch-policy",
    type=click.Choice(BRANCH_POLICIES),
    default=None,
    help="Branch whose output enters the fidelity. Defaults to ICO_TELEPORT_BRANCH_POLICY.",
)
@click.option("--output", "-o", default=None, help="Output file. Defaults to <output_dir>/fidelity_sweep.<format>.")
@click.option("--format", "-f", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Output format.")
def sweep(preset_names, delta_min, delta_max, steps, grid_n, branch_policy, output, fmt):
    """
    Sweep the average gate fidelity over the imperfection parameter delta.
    """
    from ico_teleport.fidelity import DEFAULT_PRESETS, FidelityError, IntegratorConfig
    from ico_teleport.fidelity import sweep as run_sweep

    config = _check_config()
    fmt = fmt or config.output.format
    names = list(preset_names) or list(DEFAULT_PRESETS)
    delta_min = config.fidelity.delta_min if delta_min is None else delta_min
    delta_max = config.fidelity.delta_max if delta_max is None else delta_max
    steps = config.fidelity.steps if steps is None else steps
    grid_n = config.fidelity.grid_n if grid_n is None else grid_n
    branch_policy = branch_policy or config.fidelity.branch_policy
    if output is None:
        output = str(Path(config.output.output_dir) / f"fidelity_sweep.{fmt}")

    click.echo(f"📈 Sweeping {', '.join(names)} over delta in [{delta_min}, {delta_max}] ({steps} steps)...")
    try:
        curve = run_sweep(
            presets=names,
            delta_min=delta_min,
            delta_max=delta_max,
            steps=steps,
            branch_policy=branch_policy,
            integrator=IntegratorConfig(grid_n=grid_n),
        )
    except (FidelityError, ValueError) as e:
        click.echo(f"❌ Sweep failed: {e}", err=True)
        sys.exit(EXIT_INVALID_INPUT)

    if fmt == "csv":
        text = curve.to_csv()
    else:
        payload = {
            "schema": 1,
            "version": __version__,
            "command": "sweep",
            "settings": {"grid_n": grid_n, "branch_policy": branch_policy, "steps": steps},
            "curve": curve.to_dict(),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"

    try:
        path = write_text(text, output)
    except OSError as e:
        click.echo(f"❌ Cannot write sweep: {e}", err=True)
        sys.exit(EXIT_IO_ERROR)

    values = np.array([curve.fidelities[name] for name in curve.gate_names])
    in_range = bool(np.all((values >= 0.0) & (values <= 1.0 + 1e-9)))
    for name in curve.gate_names:
        click.echo(f"   {name}: min F = {min(curve.fidelities[name]):.12g}")
    click.echo(f"💾 Saved to: {path}")
    if not in_range:
        click.echo("❌ Fidelity outside [0, 1]", err=True)
        sys.exit(1)


@cli.command()
@gate_options
@check_options
def photonic(preset_name, alpha, theta, n, n_perp, trials, seed, tol, output):
    """
    Compare the optical model's coincidence states with the abstract protocol.
    """
    from ico_teleport.checks import VerificationReport
    from ico_teleport.photonic import photonic_vs_abstract

    config = _check_config()
    gates = resolve_gates(preset_name, alpha, theta, n, n_perp)
    trials = trials or config.simulation.trials
    seed = config.simulation.seed if seed is None else seed
    tol = tol or config.simulation.tolerance

    report = Report("photonic", settings={"trials": trials, "seed": seed, "tolerance": tol})
    try:
        for name, params in gates:
            rng = np.random.default_rng(seed)
            angles = rng.uniform(0.0, 2 * math.pi, size=(trials, 2))
            runs = [photonic_vs_abstract(params, float(t1), float(t2), tol) for t1, t2 in angles]
            section = VerificationReport.merge(f"{name}/photonic", runs)
            section.details["params"] = params.to_dict()
            report.sections.append(section)
    except ValueError as e:
        click.echo(f"❌ Photonic check failed: {e}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    _emit(report, output)


@cli.command()
@check_options
def decompose(trials, seed, tol, output):
    """
    Check the waveplate gadgets for U_A1 and U_A2 and backward traversal of random gadgets.
    """
    from ico_teleport.photonic import verify_gadgets

    config = _check_config()
    trials = trials or config.simulation.trials
    seed = config.simulation.seed if seed is None else seed
    tol = tol or 1e-10

    report = Report("decompose", settings={"trials": trials, "seed": seed, "tolerance": tol})
    report.sections.append(verify_gadgets(trials, seed, tol))
    _emit(report, output)


if __name__ == "__main__":
    cli()
