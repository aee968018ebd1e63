"""Fixture programs with recorded invocations and expected outputs.

Expected-output files are plain text. Lines starting with ``#`` are
comments, except ``#! NAME VALUE`` directives which set tolerances.

* Amplitude tables (``grover-TT.expected``): one ``REGISTER AMPLITUDE
  PROBABILITY`` row per basis state. Amplitudes are compared up to a global
  sign within ``amplitude-tolerance``, probabilities within
  ``probability-tolerance``.
* Statistics (``grover-suite.expected``): ``KEY VALUE [TOLERANCE]`` rows
  matched against the ``KEY: value`` lines printed in test mode; a missing
  tolerance means exact equality.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Tuple

GROVER_TABLES = ("1000", "0100", "0010", "0001")
GROVER_CASES = ("1000-0", "0100-1", "0010-2", "0001-3")
GROVER_FINAL = ("2", "1")


def path(name):
    return Path(str(resources.files(__name__).joinpath(name)))


@dataclass(frozen=True)
class Fixture:
    name: str
    program: Path
    options: Tuple[str, ...]
    exit_code: int = 0
    expected: Optional[Path] = None

    @property
    def argv(self):
        return (*self.options, str(self.program))


@dataclass(frozen=True)
class Replay:
    exit_code: int
    stdout: str
    stderr: str


def grover_fixture(truth_table="1000"):
    """Execute-mode run of the Grover program for one single-marked truth table."""
    return Fixture(
        name=f"grover-{truth_table}",
        program=path("grover.qcp"),
        options=("-x", truth_table, "-n", "3", "-f", *GROVER_FINAL, "-t", "1"),
        expected=path(f"grover-{truth_table}.expected"),
    )


def grover_suite_fixture(threshold="0.48"):
    return Fixture(
        name="grover-suite",
        program=path("grover.qcp"),
        options=("-c", *GROVER_CASES, "-n", "3", "-f", *GROVER_FINAL, "-t", threshold),
        expected=path("grover-suite.expected"),
    )


def smoke_fixtures():
    """Small programs covering file loading, syntax errors and every instruction."""
    return [
        Fixture("read-qcp", path("quantum_program_1.qcp"), ("-n", "3", "-f", "2")),
        Fixture("read-txt", path("quantum_program_2.txt"), ("-n", "3", "-f", "2")),
        Fixture("two-gates-one-line", path("quantum_program_5.qcp"), ("-n", "3", "-f", "2")),
        Fixture("two-gates-two-lines", path("quantum_program_6.qcp"), ("-n", "3", "-f", "2")),
        Fixture("cnot-one-operand", path("quantum_program_7.qcp"), ("-n", "3"), exit_code=3),
        Fixture("negative-qubit", path("hadamard_negative.qcp"), ("-n", "3"), exit_code=3),
        Fixture("measure-split", path("measure_split.qcp"), ("-n", "1", "-f", "0")),
        Fixture("measure-halt", path("measure_halt.qcp"), ("-n", "1", "-f", "0")),
        Fixture("coverage", path("coverage.qcp"), ("-x", "01", "-n", "3", "-f", "2", "1", "0")),
    ]


def all_fixtures():
    return ([grover_fixture(tt) for tt in GROVER_TABLES] + [grover_suite_fixture()]
            + smoke_fixtures())


def replay(fixture):
    from ..cli import run

    out, err = io.StringIO(), io.StringIO()
    code = run(list(fixture.argv), out, err)
    return Replay(code, out.getvalue(), err.getvalue())


def _read_expected(p):
    directives, rows = {}, []
    for line in Path(p).read_text(encoding="utf-8").splitlines():
        if line.startswith("#!"):
            key, value = line[2:].split()
            directives[key] = float(value)
        elif line.strip() and not line.startswith("#"):
            rows.append(line.split())
    return directives, rows


def parse_amplitude_table(lines):
    """[(register, amplitude, probability)] from rendered table lines (header first)."""
    rows = []
    for line in lines[1:]:
        if not line.startswith("|"):
            break
        reg, amp, prob = line.split()
        rows.append((reg, complex(amp.replace("i", "j")), float(prob)))
    return rows


def final_tables(stdout):
    """Every FINAL AMPLITUDES table in execute-mode output, one per branch."""
    lines = stdout.splitlines()
    return [parse_amplitude_table(lines[i + 1:]) for i, l in enumerate(lines)
            if l == "FINAL AMPLITUDES:"]


def compare_amplitudes(actual, expected_path):
    """Mismatch descriptions between parsed rows and an expected table (empty when equal)."""
    d, rows = _read_expected(expected_path)
    amp_tol, prob_tol = d.get("amplitude-tolerance", 1e-3), d.get("probability-tolerance", 1e-6)
    if [r[0] for r in actual] != [r[0] for r in rows]:
        return ["register labels differ"]
    problems = []
    exp_amps = [float(r[1]) for r in rows]
    dev = {s: max(abs(a[1] - s * e) for a, e in zip(actual, exp_amps)) for s in (1, -1)}
    sign = min(dev, key=dev.get)
    if dev[sign] > amp_tol:
        problems.append(f"amplitudes differ by {dev[sign]:.3g} (> {amp_tol})")
    for (reg, _, p), r in zip(actual, rows):
        if abs(p - float(r[2])) > prob_tol:
            problems.append(f"{reg}: probability {p} vs {r[2]}")
    return problems


def compare_statistics(stdout, expected_path):
    _, rows = _read_expected(expected_path)
    printed = {}
    for line in stdout.splitlines():
        key, sep, value = line.partition(": ")
        if sep and not line.startswith(" "):
            printed[key] = value
    problems = []
    for row in rows:
        key, value = row[0], float(row[1])
        tol = float(row[2]) if len(row) > 2 else 0.0
        if key not in printed:
            problems.append(f"{key} missing from output")
        elif abs(float(printed[key]) - value) > tol:
            problems.append(f"{key}: {printed[key]} vs {row[1]} (tol {tol})")
    return problems


def check(fixture):
    """Replay a fixture through the CLI; returns (replay, list of problems)."""
    r = replay(fixture)
    problems = []
    if r.exit_code != fixture.exit_code:
        problems.append(f"exit code {r.exit_code}, expected {fixture.exit_code}: {r.stderr}")
    elif fixture.expected is not None:
        if fixture.expected.name == "grover-suite.expected":
            problems += compare_statistics(r.stdout, fixture.expected)
        else:
            tables = final_tables(r.stdout)
            if len(tables) != 1:
                problems.append(f"expected one end branch, got {len(tables)}")
            else:
                problems += compare_amplitudes(tables[0], fixture.expected)
    return r, problems
