import numpy as np
import pytest

from qgame import gates
from qgame.state import apply_gate, probability_of, unitarity_error, zero_state

R = np.sqrt(0.5)

FIXED = [gates.qnot(), gates.hadamard(), gates.srn(), gates.cnot(), gates.swap()]


@pytest.mark.parametrize("g", FIXED, ids=lambda g: g.name)
def test_fixed_gates_unitary(g):
    assert unitarity_error(g.matrix) < 1e-12


def test_parametrized_gates_unitary(rng):
    angles = rng.uniform(-10, 10, size=(1000, 4))
    worst = 0.0
    for phi, theta, psi, alpha in angles:
        for g in (gates.u_theta(theta), gates.u2(phi, theta, psi, alpha), gates.cphase(alpha)):
            worst = max(worst, unitarity_error(g.matrix))
    assert worst < 1e-12


def test_matrices():
    np.testing.assert_array_equal(gates.qnot().matrix, [[0, 1], [1, 0]])
    np.testing.assert_allclose(gates.hadamard().matrix, R * np.array([[1, 1], [1, -1]]))
    np.testing.assert_allclose(gates.srn().matrix, R * np.array([[1, -1], [1, 1]]))
    t = 0.3
    np.testing.assert_allclose(gates.u_theta(t).matrix,
                               [[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    np.testing.assert_allclose(gates.cphase(np.pi).matrix, np.diag([1, 1, 1, -1]), atol=1e-15)


def test_hadamard_on_zero():
    s = apply_gate(zero_state(1), gates.hadamard(), [0])
    np.testing.assert_allclose(s.amps, [R, R], atol=1e-15)


def test_u_theta_zero_is_identity():
    np.testing.assert_array_equal(gates.u_theta(0).matrix, np.eye(2))


def test_u2_reduces_to_rotation():
    t = 0.9
    np.testing.assert_allclose(gates.u2(0, t, 0, 0).matrix,
                               [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], atol=1e-15)


def test_u2_alpha_is_global_phase():
    a = gates.u2(0.2, 0.4, 0.6, 0.0).matrix
    b = gates.u2(0.2, 0.4, 0.6, 1.3).matrix
    np.testing.assert_allclose(b, np.exp(1.3j) * a, atol=1e-15)


def test_srn_squared_is_not_up_to_phase():
    m = gates.srn().matrix
    np.testing.assert_allclose(m @ m, [[0, -1], [1, 0]], atol=1e-15)
    s = zero_state(1)
    for _ in range(2):
        s = apply_gate(s, gates.srn(), [0])
    assert abs(probability_of(s, 0, 1) - 1) < 1e-12


@pytest.mark.parametrize("g", [gates.qnot(), gates.swap(), gates.hadamard()], ids=lambda g: g.name)
def test_involutions(rng, g):
    from conftest import random_state
    from qgame.state import from_amplitudes

    psi = from_amplitudes(random_state(rng, 3))
    targets = list(range(g.k_qubits))
    twice = apply_gate(apply_gate(psi, g, targets), g, targets)
    np.testing.assert_allclose(twice.amps, psi.amps, atol=1e-12)


def test_cnot_basis_mapping():
    # basis order |control, target>
    m = gates.cnot().matrix
    np.testing.assert_array_equal(m @ np.eye(4)[:, 2], np.eye(4)[:, 3])
    np.testing.assert_array_equal(m @ np.eye(4)[:, 1], np.eye(4)[:, 1])


def test_swap_exchanges():
    np.testing.assert_array_equal(gates.swap().matrix @ np.eye(4)[:, 1], np.eye(4)[:, 2])
