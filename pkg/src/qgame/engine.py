"""Branching interpreter for QGAME programs.

Execution starts from |0...0> as a single branch of probability 1.  A
measurement forks each live branch into an outcome-1 child and an outcome-0
child (in that order), each running its own branch body on the collapsed
state before continuing with the instructions after the measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from . import gates
from .errors import OracleLimitError, SimulationError
from .program import (Cnot, Cphase, Halt, Hadamard, Measure, Oracle, Printamps, Qnot, Srn,
                      Swap, U2, UTheta)
from .state import (MAX_QUBITS, QuantumState, apply_gate, collapse, ket_label, oracle_apply,
                    probability_of, zero_state)


@dataclass(frozen=True)
class SimulationConfig:
    n_qubits: int
    oracle_tt: Optional[Tuple[int, ...]] = None
    oracle_limit: Optional[int] = None
    prune_epsilon: float = 1e-10
    max_qubits: int = MAX_QUBITS

    def __post_init__(self):
        if not 0 <= self.prune_epsilon < 0.5:
            raise ValueError(f"prune_epsilon must be in [0, 0.5), got {self.prune_epsilon}")
        if self.oracle_tt is not None:
            tt = tuple(int(b) for b in self.oracle_tt)
            if any(b not in (0, 1) for b in tt):
                raise ValueError("oracle truth table entries must be 0 or 1")
            if len(tt) < 2 or len(tt) & (len(tt) - 1):
                raise ValueError(f"oracle truth table length {len(tt)} is not a power of two >= 2")
            object.__setattr__(self, "oracle_tt", tt)
        if self.oracle_limit is not None and self.oracle_limit < 0:
            raise ValueError("oracle_limit must be non-negative")


@dataclass(frozen=True)
class MeasurementEvent:
    qubit: int
    outcome: int
    probability: float  # conditional probability of this outcome at the fork

    def __str__(self):
        return f"(q{self.qubit} -> {self.outcome}, p={self.probability:.6g})"


@dataclass(frozen=True, eq=False)
class AmplitudeSnapshot:
    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def of(cls, state):
        amps = state.amps.copy()
        amps.setflags(write=False)
        return cls(state.n_qubits, amps)

    @property
    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def rows(self):
        """(ket label, amplitude, probability) per basis state in index order."""
        probs = self.probabilities
        return [(ket_label(b, self.n_qubits), complex(a), float(p))
                for b, (a, p) in enumerate(zip(self.amplitudes, probs))]


@dataclass(frozen=True, eq=False)
class ExecutionBranch:
    state: QuantumState
    probability: float = 1.0
    oracle_calls: int = 0
    history: Tuple[MeasurementEvent, ...] = ()
    snapshots: Tuple[AmplitudeSnapshot, ...] = ()
    halted: bool = False


class Trace:
    """Observer hooks for :func:`run_program`; override what you need."""

    def after_step(self, instr, branches, mass):
        """Called after ``instr`` ran on a block whose branches started with total ``mass``."""

    def at_fork(self, branch, qubit, p1, p0):
        pass


def gate_for(instr):
    """(GateMatrix, targets) for a unitary gate instruction."""
    if isinstance(instr, Qnot):
        return gates.qnot(), (instr.q,)
    if isinstance(instr, Hadamard):
        return gates.hadamard(), (instr.q,)
    if isinstance(instr, Srn):
        return gates.srn(), (instr.q,)
    if isinstance(instr, UTheta):
        return gates.u_theta(instr.theta), (instr.q,)
    if isinstance(instr, U2):
        return gates.u2(instr.phi, instr.theta, instr.psi, instr.alpha), (instr.q,)
    if isinstance(instr, Cnot):
        return gates.cnot(), (instr.control, instr.target)
    if isinstance(instr, Cphase):
        return gates.cphase(instr.alpha), (instr.control, instr.target)
    if isinstance(instr, Swap):
        return gates.swap(), (instr.q1, instr.q2)
    raise TypeError(f"{type(instr).__name__} is not a gate")


def _measure(branch, instr, cfg, trace):
    state = branch.state
    p1 = probability_of(state, instr.q, 1)
    p0 = probability_of(state, instr.q, 0)
    if trace is not None:
        trace.at_fork(branch, instr.q, p1, p0)
    children = []
    for outcome, p, body in ((1, p1, instr.branch1), (0, p0, instr.branch0)):
        if p <= 0.0 or p < cfg.prune_epsilon:
            continue
        child = replace(
            branch,
            state=collapse(state, instr.q, outcome),
            probability=branch.probability * p,
            history=branch.history + (MeasurementEvent(instr.q, outcome, p),),
        )
        children.extend(run_block([child], body, cfg, trace))
    return children


def step(branch, instr, cfg, trace=None):
    """Execute one instruction on one live branch; returns the resulting branches.

    A measurement returns its children after they have run their branch bodies.
    """
    if branch.halted:
        raise SimulationError("cannot step a halted branch")
    if isinstance(instr, Measure):
        return _measure(branch, instr, cfg, trace)
    if isinstance(instr, Halt):
        return [replace(branch, halted=True)]
    if isinstance(instr, Printamps):
        return [replace(branch, snapshots=branch.snapshots + (AmplitudeSnapshot.of(branch.state),))]
    if isinstance(instr, Oracle):
        if cfg.oracle_tt is None:
            raise SimulationError("ORACLE called but no truth table configured")
        if cfg.oracle_limit is not None and branch.oracle_calls >= cfg.oracle_limit:
            path = " ".join(str(e) for e in branch.history) or "(root)"
            raise OracleLimitError(
                f"oracle limit exceeded: limit is {cfg.oracle_limit}, branch {path}")
        state = oracle_apply(branch.state, cfg.oracle_tt, instr.inputs, instr.output)
        return [replace(branch, state=state, oracle_calls=branch.oracle_calls + 1)]
    gate, targets = gate_for(instr)
    return [replace(branch, state=apply_gate(branch.state, gate, targets))]


def run_block(branches, instructions, cfg, trace=None):
    mass = math.fsum(b.probability for b in branches)
    for instr in instructions:
        out = []
        for b in branches:
            if b.halted:
                out.append(b)
            else:
                out.extend(step(b, instr, cfg, trace))
        branches = out
        if trace is not None:
            trace.after_step(instr, branches, mass)
    return branches


def run_program(program, cfg, trace=None):
    """Run a validated program; returns the end branches in depth-first, outcome-1-first order."""
    root = ExecutionBranch(zero_state(cfg.n_qubits, cfg.max_qubits))
    return run_block([root], program.instructions, cfg, trace)


def expected_oracle_calls(branches):
    return math.fsum(b.probability * b.oracle_calls for b in branches)
