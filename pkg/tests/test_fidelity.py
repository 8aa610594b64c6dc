"""
Tests for the fidelity module.
"""

import math

import numpy as np
import pytest

from ico_teleport.fidelity import (
    DEFAULT_PRESETS,
    BranchPolicy,
    FidelityCurve,
    FidelityError,
    FidelityQuery,
    IntegratorConfig,
    average_fidelity,
    branch_fidelity,
    delta_grid,
    monte_carlo_fidelity,
    sweep,
)
from ico_teleport.gates import preset
from ico_teleport.protocol import AnnihilatedBranchError

CNOT_ORACLE_VALUE = 1.1025 / 1.105


def cnot_class_mu_oracle(delta: float, theta1: float, theta2: float) -> float:
    """
    Fidelity of the CNOT class_mu branch built directly from 2x2 matrices.

    The corrections are unitary and drop out of the overlap, so only the
    superposed switch orders applied to (X (x) Z)|psi> are needed.
    """
    k = 1.0 + delta
    eye = np.eye(2)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    r = math.sqrt(0.5)
    u_a1 = np.diag([np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)])

    def branch(scale):
        u_a2 = scale * x
        u_b1 = r * eye - 1j * r * scale * x
        m0 = np.kron(u_a2 @ u_a1, z @ u_b1)
        m1 = np.kron(u_a1 @ u_a2, u_b1 @ z)
        # theta = pi/2, so cos(theta/2) = sin(theta/2) = r
        return r * m0 + 1j * r * m1

    psi = np.kron(x, z) @ np.kron([math.cos(theta1), math.sin(theta1)], [math.cos(theta2), math.sin(theta2)])
    ideal, practical = branch(1.0) @ psi, branch(k) @ psi
    return abs(np.vdot(ideal, practical)) ** 2 / (np.vdot(ideal, ideal).real * np.vdot(practical, practical).real)


def cnot_closed_form(delta: float, theta1: float) -> float:
    """(cos^2 t + k sin^2 t)^2 / (cos^2 t + k^2 sin^2 t) with k = 1 + delta."""
    k = 1.0 + delta
    c2, s2 = math.cos(theta1) ** 2, math.sin(theta1) ** 2
    return (c2 + k * s2) ** 2 / (c2 + k * k * s2)


class TestModels:
    """Tests for query and curve models."""

    def test_grid_minimum(self):
        """Test that grids below 8 points are refused."""
        with pytest.raises(FidelityError):
            IntegratorConfig(grid_n=4)

    def test_unknown_policy(self):
        """Test that an unknown branch policy is refused."""
        with pytest.raises(FidelityError, match="policy"):
            FidelityQuery(preset("cnot").params, 0.1, branch_policy="best_branch")

    def test_policy_from_string(self):
        """Test that policies can be given by value."""
        query = FidelityQuery.for_preset("cz", 0.0, "probability_weighted")

        assert query.branch_policy is BranchPolicy.PROBABILITY_WEIGHTED

    def test_csv_layout(self):
        """Test header, number format and LF line endings."""
        curve = FidelityCurve(deltas=[-0.5, 0.0], fidelities={"cnot": [0.9, 1.0], "cz": [1.0, 1.0]})
        text = curve.to_csv()

        assert text == "delta,F_cnot,F_cz\n-0.5,0.9,1\n0,1,1\n"
        assert "\r" not in text

    def test_csv_read_back(self):
        """Test that from_csv restores columns in order."""
        curve = FidelityCurve(deltas=[0.1, 0.2], fidelities={"ch": [0.99, 0.98]})
        restored = FidelityCurve.from_csv(curve.to_csv())

        assert restored.gate_names == ["ch"]
        assert restored.column("ch") == [0.99, 0.98]

    def test_csv_bad_header(self):
        """Test that a foreign CSV is refused."""
        with pytest.raises(FidelityError):
            FidelityCurve.from_csv("x,y\n1,2\n")


class TestBranchFidelity:
    """Tests for the per-input fidelity from protocol runs."""

    def test_cnot_reference_point(self):
        """Test CNOT at delta = 0.1 and theta1 = theta2 = pi/4."""
        value = branch_fidelity(preset("cnot").params, 0.1, "class_mu", math.pi / 4, math.pi / 4)

        assert value == pytest.approx(CNOT_ORACLE_VALUE, abs=1e-12)
        assert value == pytest.approx(cnot_class_mu_oracle(0.1, math.pi / 4, math.pi / 4), abs=1e-12)

    def test_ideal_gates(self, preset_params):
        """Test F = 1 at delta = 0 on both classes."""
        for policy in BranchPolicy:
            assert branch_fidelity(preset_params, 0.0, policy, 0.3, 1.9) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("name", ["cz", "cy"])
    def test_cz_cy_are_immune(self, name):
        """Test that CZ and CY keep unit fidelity under the imperfection."""
        value = branch_fidelity(preset(name).params, 0.4, BranchPolicy.CLASS_MU, 0.8, 2.1)

        assert value == pytest.approx(1.0, abs=1e-12)

    def test_oracle_on_random_inputs(self, rng):
        """Test protocol runs against the direct matrix oracle."""
        params = preset("cnot").params
        for t1, t2, delta in zip(*rng.uniform(0.0, 2 * math.pi, size=(2, 10)), rng.uniform(-0.5, 0.5, 10)):
            value = branch_fidelity(params, float(delta), "class_mu", float(t1), float(t2))

            assert value == pytest.approx(cnot_class_mu_oracle(delta, t1, t2), abs=1e-10)

    def test_annihilated_branch(self):
        """Test that delta = -1 removes the switch X component entirely."""
        with pytest.raises(AnnihilatedBranchError):
            branch_fidelity(preset("cnot").params, -1.0, "class_mu", 0.0, 0.0)


class TestAverageFidelity:
    """Tests for grid quadrature."""

    def test_unit_at_zero_delta(self, preset_params):
        """Test F = 1 for every preset without imperfection."""
        query = FidelityQuery(preset_params, 0.0)

        assert average_fidelity(query) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("name", ["cz", "cy"])
    def test_cz_cy_unit_everywhere(self, name):
        """Test F = 1 on the 101-point delta grid at grid 64 for CZ and CY."""
        curve = sweep(presets=[name], delta_min=-0.5, delta_max=0.5, steps=101, integrator=IntegratorConfig(64))

        assert len(curve.deltas) == 101
        assert all(f == pytest.approx(1.0, abs=1e-9) for f in curve.column(name))

    @pytest.mark.parametrize("name", ["cnot", "ch"])
    @pytest.mark.parametrize("delta", [-0.5, -0.1, 0.1, 0.5])
    def test_quadrature_converged_at_64(self, name, delta):
        """Test that doubling the grid from 64 to 128 moves the average by < 1e-10."""
        coarse = average_fidelity(FidelityQuery.for_preset(name, delta, integrator=IntegratorConfig(64)))
        fine = average_fidelity(FidelityQuery.for_preset(name, delta, integrator=IntegratorConfig(128)))

        assert abs(coarse - fine) < 1e-10

    @pytest.mark.parametrize("name", ["cnot", "ch"])
    @pytest.mark.parametrize("delta", [-0.5, -0.1, 0.1, 0.5])
    def test_class_policies_agree(self, name, delta):
        """Test that class_mu and class_nu give the same average within 1e-9."""
        mu = average_fidelity(FidelityQuery.for_preset(name, delta, BranchPolicy.CLASS_MU))
        nu = average_fidelity(FidelityQuery.for_preset(name, delta, BranchPolicy.CLASS_NU))

        assert abs(mu - nu) < 1e-9

    @pytest.mark.parametrize(
        "name,delta,expected",
        [
            # 0.25/2.5 + 0.64 + 0.36/1.5 from the CNOT closed form at k = 1.5
            ("cnot", 0.5, 0.98),
            ("ch", -0.5, 0.946101229341),
        ],
    )
    def test_reference_averages(self, name, delta, expected):
        """Test pinned averages at the ends of the delta range."""
        value = average_fidelity(FidelityQuery.for_preset(name, delta))

        assert value == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("delta", [-0.3, 0.1, 0.4])
    def test_cnot_matches_closed_form_average(self, delta):
        """Test the grid average against the closed form averaged on the same grid."""
        grid_n = 16
        expected = math.fsum(cnot_closed_form(delta, 2 * math.pi * i / grid_n) for i in range(grid_n)) / grid_n
        query = FidelityQuery.for_preset("cnot", delta, integrator=IntegratorConfig(grid_n))

        assert average_fidelity(query) == pytest.approx(expected, abs=1e-12)

    def test_cnot_below_one(self):
        """Test that the imperfection lowers the CNOT fidelity."""
        value = average_fidelity(FidelityQuery.for_preset("cnot", 0.3, integrator=IntegratorConfig(16)))

        assert 0.9 < value < 1.0

    def test_weighted_policy_at_zero_delta(self):
        """Test the probability-weighted policy on ideal gates."""
        query = FidelityQuery.for_preset("ch", 0.0, BranchPolicy.PROBABILITY_WEIGHTED, IntegratorConfig(16))

        assert average_fidelity(query) == pytest.approx(1.0, abs=1e-9)

    def test_weighted_policy_matches_branch_fidelity(self):
        """Test one grid point of the weighted average against two protocol runs."""
        params = preset("ch").params
        grid_n = 8
        angles = [2 * math.pi * i / grid_n for i in range(grid_n)]
        expected = math.fsum(
            branch_fidelity(params, 0.2, BranchPolicy.PROBABILITY_WEIGHTED, t1, t2)
            for t1 in angles
            for t2 in angles
        ) / grid_n ** 2
        query = FidelityQuery(params, 0.2, BranchPolicy.PROBABILITY_WEIGHTED, IntegratorConfig(grid_n))

        assert average_fidelity(query) == pytest.approx(expected, abs=1e-10)

    def test_deterministic(self):
        """Test that repeated evaluations are bit-identical."""
        query = FidelityQuery.for_preset("ch", 0.25, integrator=IntegratorConfig(16))

        assert average_fidelity(query) == average_fidelity(query)


class TestMonteCarlo:
    """Tests for the Monte Carlo estimate."""

    @pytest.mark.parametrize("name,delta", [("cnot", 0.1), ("ch", -0.3), ("ch", 0.4)])
    def test_agrees_with_quadrature(self, name, delta):
        """Test agreement within a few standard errors."""
        query = FidelityQuery.for_preset(name, delta, integrator=IntegratorConfig(64))
        mean, stderr = monte_carlo_fidelity(query, samples=20000, seed=17)

        assert abs(mean - average_fidelity(query)) <= 4 * stderr + 1e-9

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["cnot", "ch"])
    @pytest.mark.parametrize("delta", [-0.3, 0.1, 0.4])
    def test_million_samples_within_three_stderr(self, name, delta):
        """Test the grid average against 10^6 random inputs within 3 standard errors."""
        query = FidelityQuery.for_preset(name, delta, integrator=IntegratorConfig(64))
        mean, stderr = monte_carlo_fidelity(query, samples=1_000_000, seed=20240607)

        assert abs(mean - average_fidelity(query)) <= 3 * stderr + 1e-12

    def test_needs_two_samples(self):
        """Test that a single sample has no standard error."""
        with pytest.raises(FidelityError):
            monte_carlo_fidelity(FidelityQuery.for_preset("cnot", 0.1), samples=1, seed=0)


class TestSweep:
    """Tests for delta sweeps."""

    def test_delta_grid_inclusive(self):
        """Test that both ends are included."""
        grid = delta_grid(-0.5, 0.5, 101)

        assert grid[0] == -0.5 and grid[-1] == 0.5
        assert len(grid) == 101

    def test_delta_grid_errors(self):
        """Test invalid step counts and ranges."""
        with pytest.raises(FidelityError):
            delta_grid(0.0, 1.0, 1)
        with pytest.raises(FidelityError):
            delta_grid(1.0, 0.0, 5)

    def test_sweep_columns(self):
        """Test column order and unit fidelity at delta = 0."""
        curve = sweep(delta_min=-0.2, delta_max=0.2, steps=3, integrator=IntegratorConfig(8))

        assert curve.gate_names == list(DEFAULT_PRESETS)
        assert curve.deltas[1] == 0.0
        for name in curve.gate_names:
            assert curve.column(name)[1] == pytest.approx(1.0, abs=1e-9)
            assert all(0.0 <= f <= 1.0 + 1e-9 for f in curve.column(name))

    def test_sweep_needs_presets(self):
        """Test that an empty preset list is refused."""
        with pytest.raises(FidelityError):
            sweep(presets=[], steps=2, integrator=IntegratorConfig(8))

    def test_sweep_unknown_preset(self):
        """Test that unknown names propagate as parameter errors."""
        with pytest.raises(ValueError):
            sweep(presets=["toffoli"], steps=2, integrator=IntegratorConfig(8))
