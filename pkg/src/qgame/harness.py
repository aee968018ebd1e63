"""Test mode (statistics over oracle cases) and execute mode (measurement history)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .engine import AmplitudeSnapshot, SimulationConfig, expected_oracle_calls, run_program
from .parser import validate_program
from .state import read_distribution

_CASE_RE = re.compile(r"([01]+)-(\d+)")
_TT_RE = re.compile(r"[01]+")


def parse_truth_table(text):
    """``"1000"`` -> (1, 0, 0, 0). Length must be a power of two >= 2."""
    if not _TT_RE.fullmatch(text) or len(text) < 2 or len(text) & (len(text) - 1):
        raise ValueError(f"bad truth table {text!r}: expected 2^m bits of 0/1")
    return tuple(int(c) for c in text)


@dataclass(frozen=True)
class TestCase:
    truth_table: Tuple[int, ...]
    desired_output: int

    __test__ = False  # not a pytest class

    @classmethod
    def parse(cls, token):
        """Parse ``BITS-OUTPUT`` such as ``0100-1``."""
        m = _CASE_RE.fullmatch(token)
        if not m:
            raise ValueError(f"bad case {token!r}: expected BITS-OUTPUT, e.g. 0100-1")
        return cls(parse_truth_table(m.group(1)), int(m.group(2)))

    def __str__(self):
        return "".join(map(str, self.truth_table)) + f"-{self.desired_output}"


@dataclass(frozen=True)
class CaseOutcome:
    error_probability: float
    expected_oracles: float
    is_miss: bool


@dataclass(frozen=True)
class TestResult:
    misses: int
    max_error: float
    avg_error: float
    max_exp_oracles: float
    avg_exp_oracles: float
    outcomes: Tuple[CaseOutcome, ...] = ()

    __test__ = False


def _config(n_qubits, truth_table, **options):
    return SimulationConfig(n_qubits, oracle_tt=truth_table, **options)


def evaluate_case(program, n_qubits, case, final_qubits, threshold, **options):
    """Run one case; error is 1 minus the branch-weighted probability of reading the answer."""
    final_qubits = tuple(final_qubits)
    if not final_qubits:
        raise ValueError("at least one final measurement qubit is required")
    if not 0 <= case.desired_output < 2 ** len(final_qubits):
        raise ValueError(f"desired output {case.desired_output} cannot be read from "
                         f"{len(final_qubits)} final qubit(s)")
    validate_program(program, n_qubits, len(case.truth_table))
    branches = run_program(program, _config(n_qubits, case.truth_table, **options))
    success = math.fsum(b.probability * read_distribution(b.state, final_qubits)[case.desired_output]
                        for b in branches)
    error = min(max(1.0 - success, 0.0), 1.0)
    return CaseOutcome(error, expected_oracle_calls(branches), error > threshold)


def summarize(outcomes):
    errors = [o.error_probability for o in outcomes]
    oracles = [o.expected_oracles for o in outcomes]
    return TestResult(
        misses=sum(o.is_miss for o in outcomes),
        max_error=max(errors),
        avg_error=math.fsum(errors) / len(errors),
        max_exp_oracles=max(oracles),
        avg_exp_oracles=math.fsum(oracles) / len(oracles),
        outcomes=tuple(outcomes),
    )


def run_test_suite(program, n_qubits, cases, final_qubits, threshold, **options):
    cases = list(cases)
    if not cases:
        raise ValueError("test mode needs at least one case")
    if len({len(c.truth_table) for c in cases}) != 1:
        raise ValueError("all truth tables must have the same length")
    return summarize([evaluate_case(program, n_qubits, c, final_qubits, threshold, **options)
                      for c in cases])


@dataclass(frozen=True, eq=False)
class BranchReport:
    probability: float
    history: tuple
    snapshots: Tuple[AmplitudeSnapshot, ...]
    final: AmplitudeSnapshot
    halted: bool
    oracle_calls: int
    distribution: Optional[np.ndarray] = None  # over final qubits, when given


@dataclass(frozen=True, eq=False)
class ExecutionReport:
    branches: Tuple[BranchReport, ...]
    expected_oracles: float
    final_qubits: Tuple[int, ...] = ()

    @property
    def distribution(self):
        """Branch-weighted distribution over the final measurement qubits."""
        if not self.final_qubits:
            return None
        return sum(b.probability * b.distribution for b in self.branches)


def execute_program(program, n_qubits, oracle_tt=None, final_qubits=(), **options):
    final_qubits = tuple(final_qubits)
    validate_program(program, n_qubits, None if oracle_tt is None else len(oracle_tt))
    branches = run_program(program, _config(n_qubits, oracle_tt, **options))
    reports = tuple(
        BranchReport(
            probability=b.probability,
            history=b.history,
            snapshots=b.snapshots,
            final=AmplitudeSnapshot.of(b.state),
            halted=b.halted,
            oracle_calls=b.oracle_calls,
            distribution=read_distribution(b.state, final_qubits) if final_qubits else None,
        )
        for b in branches
    )
    return ExecutionReport(reports, expected_oracle_calls(branches), final_qubits)
