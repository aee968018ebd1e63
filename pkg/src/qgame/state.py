"""State-vector representation of an n-qubit register.

Basis index ``b`` encodes qubit ``q`` as bit ``q`` of ``b``; qubit 0 is the
least significant bit, so kets print with qubit ``n-1`` leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonUnitaryError, SimulationError

MAX_QUBITS = 24
UNITARY_TOL = 1e-9


@dataclass
class QuantumState:
    n_qubits: int
    amps: np.ndarray

    def copy(self):
        return QuantumState(self.n_qubits, self.amps.copy())

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def probabilities(self):
        return np.abs(self.amps) ** 2

    def label(self, index):
        return ket_label(index, self.n_qubits)

    def __len__(self):
        return len(self.amps)


def ket_label(index, n_qubits):
    return f"|{index:0{n_qubits}b}⟩"


def zero_state(n, max_qubits=MAX_QUBITS):
    """The register |0...0> on ``n`` qubits."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= max_qubits:
        raise SimulationError(f"qubit count must be in [1, {max_qubits}], got {n}")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[0] = 1.0
    return QuantumState(int(n), amps)


def from_amplitudes(amps):
    """Wrap a normalized amplitude vector whose length is a power of two."""
    amps = np.asarray(amps, dtype=np.complex128).copy()
    n = int(np.log2(len(amps))) if len(amps) else 0
    if n < 1 or 2 ** n != len(amps):
        raise ValueError(f"amplitude vector length {len(amps)} is not a power of two >= 2")
    return QuantumState(n, amps)


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A 2^k x 2^k unitary. Unitarity is checked on construction."""

    name: str
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NonUnitaryError(f"{self.name}: gate matrix must be square, got shape {m.shape}")
        dim = m.shape[0]
        k = dim.bit_length() - 1
        if dim < 2 or 2 ** k != dim:
            raise NonUnitaryError(f"{self.name}: dimension {dim} is not a power of two >= 2")
        dev = unitarity_error(m)
        if not dev < UNITARY_TOL:
            raise NonUnitaryError(f"{self.name}: matrix is not unitary (max |U'U - I| = {dev:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def k_qubits(self):
        return self.matrix.shape[0].bit_length() - 1

    def __repr__(self):
        return f"GateMatrix({self.name!r}, k={self.k_qubits})"


def unitarity_error(matrix):
    m = np.asarray(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def _check_targets(state, targets):
    n = state.n_qubits
    for q in targets:
        if not 0 <= q < n:
            raise SimulationError(f"qubit {q} out of range for {n}-qubit state")
    if len(set(targets)) != len(targets):
        raise SimulationError(f"duplicate target qubits {tuple(targets)}")


def apply_gate(state, gate, targets):
    """Apply ``gate`` to ``targets`` (first target = most significant gate index).

    The 2^k sub-vectors selected by the target qubits are gathered, multiplied
    by the gate matrix and scattered back; the full 2^n operator is never built.
    """
    targets = tuple(int(q) for q in targets)
    if len(targets) != gate.k_qubits:
        raise SimulationError(f"{gate.name} acts on {gate.k_qubits} qubit(s), got targets {targets}")
    _check_targets(state, targets)
    n, k = state.n_qubits, len(targets)
    axes = [n - 1 - q for q in targets]
    psi = state.amps.reshape((2,) * n)
    block = np.moveaxis(psi, axes, range(k)).reshape(2 ** k, -1)
    out = (gate.matrix @ block).reshape((2,) * n)
    out = np.moveaxis(out, range(k), axes).reshape(-1)
    return QuantumState(n, np.ascontiguousarray(out))


def _row_index(indices, qubits):
    # Integer spelled by the bits at `qubits`, first listed qubit most significant.
    width = len(qubits)
    row = np.zeros_like(indices)
    for i, q in enumerate(qubits):
        row |= ((indices >> q) & 1) << (width - 1 - i)
    return row


def oracle_apply(state, truth_table, inputs, output):
    """Map |x, out> to |x, out XOR f(x)> where f(x) = truth_table[x]."""
    inputs = tuple(int(q) for q in inputs)
    tt = np.asarray(truth_table, dtype=np.int64)
    if len(tt) != 2 ** len(inputs):
        raise SimulationError(
            f"truth table of length {len(tt)} does not match {len(inputs)} oracle input(s)")
    _check_targets(state, (*inputs, output))
    idx = np.arange(len(state.amps), dtype=np.int64)
    src = idx ^ (tt[_row_index(idx, inputs)] << output)
    return QuantumState(state.n_qubits, state.amps[src])


def oracle_gate(truth_table):
    """Permutation matrix of the oracle on (inputs..., output), output least significant."""
    tt = [int(b) for b in truth_table]
    dim = 2 * len(tt)
    m = np.zeros((dim, dim))
    for x, f in enumerate(tt):
        for out in (0, 1):
            m[(x << 1) | (out ^ f), (x << 1) | out] = 1.0
    return GateMatrix("ORACLE", m)


def _mask(state, q, v):
    _check_targets(state, (q,))
    idx = np.arange(len(state.amps))
    return ((idx >> q) & 1) == v


def probability_of(state, q, v):
    """Probability that measuring qubit ``q`` yields ``v``."""
    p = float(np.sum(np.abs(state.amps[_mask(state, q, v)]) ** 2))
    return min(max(p, 0.0), 1.0)


def collapse(state, q, v):
    """Project onto qubit ``q`` = ``v`` and renormalize."""
    mask = _mask(state, q, v)
    p = float(np.sum(np.abs(state.amps[mask]) ** 2))
    if p <= 0.0:
        raise SimulationError(f"cannot collapse qubit {q} to {v}: outcome has probability 0")
    return QuantumState(state.n_qubits, np.where(mask, state.amps, 0) / np.sqrt(p))


def read_distribution(state, qubits, msb_first=True):
    """Probability of each integer read from ``qubits``; returned array is indexed by value.

    Repeated qubits are allowed and simply repeat the same bit.
    """
    qubits = tuple(int(q) for q in qubits)
    if not msb_first:
        qubits = qubits[::-1]
    for q in qubits:
        if not 0 <= q < state.n_qubits:
            raise SimulationError(f"qubit {q} out of range for {state.n_qubits}-qubit state")
    idx = np.arange(len(state.amps), dtype=np.int64)
    values = _row_index(idx, qubits)
    return np.bincount(values, weights=state.probabilities(), minlength=2 ** len(qubits))
