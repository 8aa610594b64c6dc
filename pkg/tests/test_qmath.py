"""
Tests for the qmath module.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import angles, unit_vectors
from ico_teleport.qmath import (
    COMPUTATIONAL,
    H,
    I2,
    PLUS_MINUS,
    X,
    Y,
    Z,
    Basis2,
    ImpossibleBranchError,
    Operator,
    QMathError,
    StateVec,
    UnitVec3,
    apply,
    basis_state,
    equal_up_to_global_phase,
    forced,
    global_phase_deviation,
    identity,
    meas_basis_mu_nu,
    measure,
    pauli_combination,
    rotation,
    rx,
    ry,
    rz,
    sampled,
    single_qubit,
    tensor,
)


class TestOperator:
    """Tests for the Operator type."""

    def test_rejects_non_square(self):
        """Test that a rectangular matrix is refused."""
        with pytest.raises(QMathError, match="square"):
            Operator(np.zeros((2, 4)))

    def test_rejects_non_power_of_two(self):
        """Test that dimension 3 is refused."""
        with pytest.raises(QMathError, match="power of two"):
            Operator(np.eye(3))

    def test_matrix_is_read_only_copy(self):
        """Test that mutating the source array does not change the operator."""
        source = np.eye(2)
        op = Operator(source)
        source[0, 0] = 5.0

        assert op.matrix[0, 0] == 1.0
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 2.0

    def test_scalar_multiplication_both_sides(self):
        """Test numpy and python scalars on either side."""
        assert (2.0 * X).is_close(Operator(2 * X.matrix))
        assert (X * 1j).is_close(Operator(1j * X.matrix))
        assert (np.float64(3.0) * Z).is_close(Operator(3 * Z.matrix))

    def test_pauli_algebra(self):
        """Test XY = iZ and the anticommutation of X and Z."""
        assert (X @ Y).is_close(1j * Z)
        assert (X @ Z + Z @ X).is_close(Operator(np.zeros((2, 2))))

    def test_dimension_mismatch(self):
        """Test that composing 2x2 with 4x4 raises."""
        with pytest.raises(QMathError):
            X @ identity(2)

    def test_n_qubits(self):
        """Test the qubit count of a tensor product."""
        assert tensor([X, Y, Z]).n_qubits == 3

    def test_hermitian_and_unitary(self):
        """Test the Hadamard gate is both Hermitian and unitary."""
        assert H.is_hermitian()
        assert H.is_unitary()
        assert not (2.0 * H).is_unitary()


class TestUnitVec3:
    """Tests for unit vectors."""

    def test_rejects_non_unit(self):
        """Test that a vector of norm 2 is refused."""
        with pytest.raises(QMathError):
            UnitVec3(2.0, 0.0, 0.0)

    def test_normalized(self):
        """Test normalization of an arbitrary vector."""
        v = UnitVec3.normalized(3.0, 0.0, 4.0)

        assert v.x == pytest.approx(0.6)
        assert v.z == pytest.approx(0.8)

    def test_dict_round_trip(self):
        """Test to_dict/from_dict."""
        v = UnitVec3.normalized(1.0, 1.0, 0.0)

        assert UnitVec3.from_dict(v.to_dict()) == v

    def test_pauli(self):
        """Test n.sigma for the z axis."""
        assert UnitVec3(0.0, 0.0, 1.0).pauli().is_close(Z)


class TestRotation:
    """Tests for rotation and the axis shortcuts."""

    def test_closed_form(self):
        """Test R_n(theta) = cos(theta/2) I - i sin(theta/2) n.sigma."""
        n = UnitVec3.normalized(1.0, -2.0, 0.5)
        theta = 0.7
        expected = math.cos(theta / 2) * I2 + (-1j * math.sin(theta / 2)) * n.pauli()

        assert rotation(n, theta).is_close(expected, tol=1e-12)

    def test_full_turn_is_minus_identity(self):
        """Test R_n(2 pi) = -I."""
        assert rz(2 * math.pi).is_close(-1.0 * I2, tol=1e-12)

    def test_axis_shortcuts(self):
        """Test rx, ry and rz at pi match -iX, -iY and -iZ."""
        assert rx(math.pi).is_close(-1j * X, tol=1e-12)
        assert ry(math.pi).is_close(-1j * Y, tol=1e-12)
        assert rz(math.pi).is_close(-1j * Z, tol=1e-12)

    def test_rejects_non_unit_axis(self):
        """Test that a non-unit axis raises."""
        with pytest.raises(QMathError):
            rotation((1.0, 1.0, 0.0), 0.3)

    @settings(max_examples=50, deadline=None)
    @given(n=unit_vectors(), theta=angles)
    def test_rotations_are_unitary(self, n, theta):
        """Property: every rotation is unitary."""
        assert rotation(n, theta).is_unitary(tol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(n=unit_vectors(), a=angles, b=angles)
    def test_rotations_compose_additively(self, n, a, b):
        """Property: R_n(a) R_n(b) = R_n(a + b)."""
        assert (rotation(n, a) @ rotation(n, b)).is_close(rotation(n, a + b), tol=1e-12)

    def test_pauli_combination_non_unit(self):
        """Test that pauli_combination accepts non-unit vectors."""
        assert pauli_combination((1.1, 0.0, 0.0)).is_close(1.1 * X)


class TestTensor:
    """Tests for tensor products."""

    def test_leftmost_factor_is_most_significant(self):
        """Test that X (x) I flips the leftmost bit."""
        state = basis_state("00", ("q0", "q1"))
        out = tensor([X, I2]).matrix @ state.amps

        assert out[0b10] == 1.0

    def test_empty_raises(self):
        """Test that an empty factor list raises."""
        with pytest.raises(QMathError):
            tensor([])

    @settings(max_examples=25, deadline=None)
    @given(n1=unit_vectors(), n2=unit_vectors(), n3=unit_vectors(), t=angles)
    def test_associative(self, n1, n2, n3, t):
        """Property: (A (x) B) (x) C = A (x) (B (x) C)."""
        a, b, c = rotation(n1, t), rotation(n2, t), rotation(n3, t)
        left = tensor([tensor([a, b]), c])
        right = tensor([a, tensor([b, c])])

        assert left.is_close(right, tol=1e-12)


class TestStateVec:
    """Tests for labelled state vectors."""

    def test_duplicate_labels(self):
        """Test that repeated labels raise."""
        with pytest.raises(QMathError, match="Duplicate"):
            StateVec(np.zeros(4), ("a", "a"))

    def test_wrong_length(self):
        """Test that the amplitude count must match the labels."""
        with pytest.raises(QMathError):
            StateVec(np.zeros(3), ("a", "b"))

    def test_amplitude_lookup(self):
        """Test amplitude by basis string."""
        state = basis_state("01", ("a", "b"))

        assert state.amplitude("01") == 1.0
        assert state.amplitude("10") == 0.0

    def test_normalized(self):
        """Test that normalized() rescales to unit norm."""
        state = StateVec(np.array([3.0, 4.0]), ("q",)).normalized()

        assert state.is_normalized()
        assert state.amps[1] == pytest.approx(0.8)

    def test_tensor_labels(self):
        """Test that tensor concatenates labels."""
        joined = single_qubit(1, 0, "a").tensor(single_qubit(0, 1, "b"))

        assert joined.labels == ("a", "b")
        assert joined.amplitude("01") == 1.0

    def test_dict_round_trip(self):
        """Test to_dict/from_dict preserves amplitudes."""
        state = StateVec(np.array([1, 1j]) / math.sqrt(2), ("q",))
        restored = StateVec.from_dict(state.to_dict())

        assert np.allclose(restored.amps, state.amps)
        assert restored.labels == state.labels


class TestApply:
    """Tests for applying gates to register subsets."""

    def test_single_qubit_target(self):
        """Test X on the second qubit of three."""
        state = basis_state("000", ("a", "b", "c"))
        out = apply(state, X, ["b"])

        assert out.amplitude("010") == 1.0

    def test_target_order_matters(self):
        """Test that the first target is the gate's most significant qubit."""
        cnot = Operator(np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
        state = basis_state("01", ("a", "b"))

        assert apply(state, cnot, ["a", "b"]).amplitude("01") == 1.0
        assert apply(state, cnot, ["b", "a"]).amplitude("11") == 1.0

    def test_matches_full_kron(self, rng):
        """Test apply on non-adjacent qubits against the explicit operator."""
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        state = StateVec(amps, ("a", "b", "c")).normalized()
        gate = tensor([rotation((0, 1, 0), 0.4), rotation((1, 0, 0), 1.1)])

        out = apply(state, gate, ["a", "c"])
        swap_bc = np.eye(8)[[0, 2, 1, 3, 4, 6, 5, 7]]
        full = swap_bc @ np.kron(gate.matrix, np.eye(2)) @ swap_bc

        assert np.allclose(out.amps, full @ state.amps, atol=1e-12)

    def test_unknown_label(self):
        """Test that an unknown label raises."""
        with pytest.raises(QMathError, match="Unknown"):
            apply(basis_state("0", ("a",)), X, ["z"])

    def test_repeated_target(self):
        """Test that a target cannot appear twice."""
        with pytest.raises(QMathError):
            apply(basis_state("00", ("a", "b")), identity(2), ["a", "a"])

    def test_dimension_mismatch(self):
        """Test that a 2-qubit gate on one target raises."""
        with pytest.raises(QMathError):
            apply(basis_state("00", ("a", "b")), identity(2), ["a"])


class TestMeasure:
    """Tests for projective measurement."""

    def test_basis_must_be_orthonormal(self):
        """Test that a non-orthogonal basis is refused."""
        with pytest.raises(QMathError):
            Basis2(np.array([1, 0]), np.array([1, 1]) / math.sqrt(2))

    def test_forced_outcome_and_residual(self):
        """Test measuring |+>|1> in the +/- basis."""
        state = StateVec(np.kron(np.array([1, 1]) / math.sqrt(2), [0, 1]), ("a", "b"))
        result = measure(state, "a", PLUS_MINUS, forced(0))

        assert result.outcome == "plus"
        assert result.probability == pytest.approx(1.0)
        assert result.residual.labels == ("b",)
        assert np.allclose(result.residual.amps, [0, 1])

    def test_impossible_forced_outcome(self):
        """Test that forcing a zero-probability outcome raises."""
        state = basis_state("0", ("a",))

        with pytest.raises(ImpossibleBranchError):
            measure(state, "a", COMPUTATIONAL, forced(1))

    def test_collapsed_post_state(self):
        """Test the post-measurement register keeps the measured qubit collapsed."""
        state = StateVec(np.array([1, 1, 1, 1]) / 2, ("a", "b"))
        result = measure(state, "b", COMPUTATIONAL, forced(1))

        assert result.post_state.labels == ("a", "b")
        assert np.allclose(result.post_state.amps, [0, 1, 0, 1] / np.sqrt(2))

    def test_mu_nu_basis(self):
        """Test mu(theta) and nu(theta) vectors."""
        basis = meas_basis_mu_nu(math.pi / 2)

        assert np.allclose(basis.v0, [1 / math.sqrt(2), 1 / math.sqrt(2)])
        assert np.allclose(basis.v1, [1 / math.sqrt(2), -1 / math.sqrt(2)])
        assert basis.names == ("mu", "nu")

    def test_sampling_is_deterministic(self):
        """Test that identical seeds give identical outcomes."""
        state = StateVec(np.array([1, 1]) / math.sqrt(2), ("q",))
        first = [measure(state, "q", COMPUTATIONAL, src).index for src in [sampled(7)] * 20]
        second = [measure(state, "q", COMPUTATIONAL, src).index for src in [sampled(7)] * 20]

        assert first == second

    def test_forced_sequence_exhausted(self):
        """Test that a forced source cannot be used past its length."""
        source = forced(0)
        state = StateVec(np.array([1, 1]) / math.sqrt(2), ("q",))
        measure(state, "q", COMPUTATIONAL, source)

        with pytest.raises(QMathError, match="exhausted"):
            measure(state, "q", COMPUTATIONAL, source)


class TestGlobalPhase:
    """Tests for equality up to a global phase."""

    def test_recovers_phase(self):
        """Test that the returned phase maps a onto b."""
        phase = np.exp(0.3j)
        ok, found = equal_up_to_global_phase(H, phase * H)

        assert ok
        assert found == pytest.approx(phase)

    def test_not_proportional(self):
        """Test that X and Z are not equal up to phase."""
        assert equal_up_to_global_phase(X, Z) == (False, None)

    def test_states(self):
        """Test states equal up to phase."""
        a = StateVec(np.array([1, 1j]) / math.sqrt(2), ("q",))
        b = StateVec(-1j * a.amps, ("q",))

        ok, phase = equal_up_to_global_phase(a, b)

        assert ok
        assert phase == pytest.approx(-1j)

    def test_shape_mismatch(self):
        """Test that different shapes raise."""
        with pytest.raises(QMathError):
            global_phase_deviation(X, identity(2))

    @settings(max_examples=50, deadline=None)
    @given(n=unit_vectors(), theta=angles, phi=st.floats(min_value=-math.pi, max_value=math.pi))
    def test_phase_property(self, n, theta, phi):
        """Property: U and e^{i phi} U are always equal up to phase e^{i phi}."""
        u = rotation(n, theta)
        ok, phase = equal_up_to_global_phase(u, np.exp(1j * phi) * u, tol=1e-12)

        assert ok
        assert abs(phase - np.exp(1j * phi)) < 1e-12
