"""Quantum gate and measurement emulator for QGAME-syntax programs."""

__version__ = "0.1.0"

from .engine import SimulationConfig, expected_oracle_calls, run_program, step
from .errors import (LexError, NonUnitaryError, OracleLimitError, ParseError, QgameError,
                     SimulationError, ValidationError)
from .harness import (TestCase, TestResult, evaluate_case, execute_program, run_test_suite)
from .parser import load_program, parse_program, parse_text, tokenize, validate_program
from .program import Program, format_program
from .state import (GateMatrix, QuantumState, apply_gate, collapse, oracle_apply,
                    probability_of, read_distribution, zero_state)
