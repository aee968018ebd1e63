import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgame import gates
from qgame.errors import NonUnitaryError, SimulationError
from qgame.state import (GateMatrix, QuantumState, apply_gate, collapse, from_amplitudes,
                         oracle_apply, oracle_gate, probability_of, read_distribution, zero_state)

import dense_reference as dense
from conftest import random_state, random_unitary

R = np.sqrt(0.5)


def test_zero_state():
    s = zero_state(3)
    assert s.amps.tolist() == [1, 0, 0, 0, 0, 0, 0, 0]
    assert zero_state(1).amps.tolist() == [1, 0]


@pytest.mark.parametrize("n", [0, -1, 25])
def test_zero_state_out_of_range(n):
    with pytest.raises(SimulationError):
        zero_state(n)


def test_zero_state_ceiling_is_configurable():
    with pytest.raises(SimulationError):
        zero_state(3, max_qubits=2)
    assert zero_state(2, max_qubits=2).n_qubits == 2


def test_ket_label_qubit0_rightmost():
    s = zero_state(3)
    assert s.label(1) == "|001⟩"
    assert s.label(4) == "|100⟩"


def test_hadamard_on_qubit_2():
    s = apply_gate(zero_state(3), gates.hadamard(), [2])
    expected = np.zeros(8)
    expected[0] = expected[4] = R
    np.testing.assert_allclose(s.amps, expected, atol=1e-15)


def test_qnot_on_qubit_0():
    s = apply_gate(zero_state(3), gates.qnot(), [0])
    assert s.amps.tolist() == [0, 1, 0, 0, 0, 0, 0, 0]


def test_random_unitary_matches_dense_kron(rng):
    psi = random_state(rng, 4)
    u = random_unitary(rng, 2)
    s = apply_gate(from_amplitudes(psi), GateMatrix("U", u), [1])
    eye = np.eye(2)
    full = np.kron(np.kron(np.kron(eye, eye), u), eye)
    np.testing.assert_allclose(s.amps, full @ psi, atol=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_k_qubit_gates_match_dense_expansion(rng, k):
    for _ in range(20):
        n = int(rng.integers(k, 6))
        targets = [int(t) for t in rng.choice(n, size=k, replace=False)]
        psi = random_state(rng, n)
        u = random_unitary(rng, 2 ** k)
        s = apply_gate(from_amplitudes(psi), GateMatrix("U", u), targets)
        np.testing.assert_allclose(s.amps, dense.expand(u, targets, n) @ psi, atol=1e-12)


def test_target_order_selects_control():
    # |q1=1, q0=0>: CNOT(control=1, target=0) flips q0, CNOT(0, 1) does nothing
    s = QuantumState(2, np.array([0, 0, 1, 0], complex))
    assert apply_gate(s, gates.cnot(), [1, 0]).amps.tolist() == [0, 0, 0, 1]
    assert apply_gate(s, gates.cnot(), [0, 1]).amps.tolist() == [0, 0, 1, 0]


@pytest.mark.parametrize("targets", [[0, 0], [0, 3], [-1, 0]])
def test_bad_targets(targets):
    with pytest.raises(SimulationError):
        apply_gate(zero_state(3), gates.cnot(), targets)


def test_wrong_target_count():
    with pytest.raises(SimulationError):
        apply_gate(zero_state(3), gates.cnot(), [0])


def test_apply_does_not_mutate_input():
    s = zero_state(2)
    apply_gate(s, gates.hadamard(), [0])
    assert s.amps.tolist() == [1, 0, 0, 0]


@pytest.mark.parametrize("m", [[[1, 0], [0, 2]], [[1, 1], [0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                               [[1, 0]]])
def test_non_unitary_rejected(m):
    with pytest.raises(NonUnitaryError):
        GateMatrix("bad", m)


def test_gate_matrix_is_read_only():
    g = gates.hadamard()
    with pytest.raises(ValueError):
        g.matrix[0, 0] = 5


def test_near_unitary_within_tolerance_accepted():
    m = np.eye(2) * (1 + 1e-11)
    assert GateMatrix("almost", m).k_qubits == 1


@pytest.mark.parametrize("gate,targets", [
    (gates.qnot(), [1]), (gates.hadamard(), [2]), (gates.srn(), [0]), (gates.u_theta(0.7), [3]),
    (gates.u2(0.1, 0.2, 0.3, 0.4), [1]), (gates.cnot(), [3, 0]), (gates.cphase(1.1), [0, 2]),
    (gates.swap(), [2, 1]),
])
def test_norm_preserved(rng, gate, targets):
    for _ in range(10):
        s = apply_gate(from_amplitudes(random_state(rng, 4)), gate, targets)
        assert abs(s.norm() - 1) < 1e-10


# oracle

def test_oracle_marked_row_flips_output():
    s = oracle_apply(zero_state(3), (1, 0, 0, 0), (2, 1), 0)
    assert s.amps.tolist() == [0, 1, 0, 0, 0, 0, 0, 0]


def test_oracle_unmarked_row_is_identity():
    s = QuantumState(3, np.eye(8, dtype=complex)[2])  # |010>
    assert oracle_apply(s, (1, 0, 0, 0), (2, 1), 0).amps.tolist() == [0, 0, 1, 0, 0, 0, 0, 0]


def test_oracle_matches_dense_permutation(rng):
    psi = random_state(rng, 3)
    tt = (1, 0, 0, 0)
    full = np.zeros((8, 8))
    # |q2 q1 q0>: row x = 2*q2 + q1, flip q0 when tt[x] == 1
    for b in range(8):
        x = 2 * ((b >> 2) & 1) + ((b >> 1) & 1)
        full[b ^ tt[x], b] = 1
    out = oracle_apply(from_amplitudes(psi), tt, (2, 1), 0)
    np.testing.assert_allclose(out.amps, full @ psi, atol=1e-15)


def test_oracle_gate_agrees_with_oracle_apply(rng):
    for _ in range(20):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(1, n))
        qs = [int(q) for q in rng.choice(n, size=m + 1, replace=False)]
        tt = tuple(int(b) for b in rng.integers(0, 2, size=2 ** m))
        psi = from_amplitudes(random_state(rng, n))
        a = oracle_apply(psi, tt, qs[:-1], qs[-1])
        b = apply_gate(psi, oracle_gate(tt), qs)
        np.testing.assert_allclose(a.amps, b.amps, atol=1e-15)
        np.testing.assert_allclose(a.amps, dense.oracle_matrix(tt, qs[:-1], qs[-1], n) @ psi.amps,
                                   atol=1e-15)


def test_oracle_arity_mismatch():
    with pytest.raises(SimulationError):
        oracle_apply(zero_state(3), (1, 0), (2, 1), 0)


# measurement helpers

def test_probability_of():
    plus = from_amplitudes([R, R])
    assert probability_of(plus, 0, 1) == pytest.approx(0.5, abs=1e-15)
    assert probability_of(zero_state(3), 2, 1) == 0


def test_collapse():
    plus = from_amplitudes([R, R])
    np.testing.assert_allclose(collapse(plus, 0, 1).amps, [0, 1], atol=1e-15)
    assert collapse(zero_state(1), 0, 0).amps.tolist() == [1, 0]
    s = collapse(from_amplitudes([0.6, 0.8]), 0, 1)
    np.testing.assert_allclose(s.amps, [0, 1], atol=1e-15)
    assert abs(s.norm() - 1) < 1e-15


def test_collapse_zero_probability():
    with pytest.raises(SimulationError):
        collapse(zero_state(1), 0, 1)


def test_read_distribution():
    assert read_distribution(zero_state(3), (2, 1)).tolist() == [1, 0, 0, 0]
    uniform = from_amplitudes([0.5] * 4)
    np.testing.assert_allclose(read_distribution(uniform, (1, 0)), [0.25] * 4, atol=1e-15)


def test_read_distribution_msb_first():
    s = QuantumState(3, np.eye(8, dtype=complex)[0b100])  # q2 = 1
    assert read_distribution(s, (2, 1)).tolist() == [0, 0, 1, 0]
    assert read_distribution(s, (1, 2)).tolist() == [0, 1, 0, 0]
    assert read_distribution(s, (2, 1), msb_first=False).tolist() == [0, 1, 0, 0]


def test_read_distribution_repeated_qubit():
    s = QuantumState(2, np.eye(4, dtype=complex)[1])  # q0 = 1
    assert read_distribution(s, (0, 1, 0)).tolist() == [0, 0, 0, 0, 0, 1, 0, 0]


def test_read_distribution_brute_force(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(1, n + 1))
        qs = [int(q) for q in rng.choice(n, size=k, replace=False)]
        psi = random_state(rng, n)
        expected = np.zeros(2 ** k)
        for b in range(2 ** n):
            v = int("".join(str((b >> q) & 1) for q in qs), 2)
            expected[v] += abs(psi[b]) ** 2
        got = read_distribution(from_amplitudes(psi), qs)
        np.testing.assert_allclose(got, expected, atol=1e-14)
        assert abs(got.sum() - 1) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 6))
def test_probabilities_complementary(seed, n):
    rng = np.random.default_rng(seed)
    s = from_amplitudes(random_state(rng, n))
    for q in range(n):
        assert abs(probability_of(s, q, 0) + probability_of(s, q, 1) - 1) < 1e-12
