"""``qgame`` command-line front end.

Exit codes: 0 success, 1 usage, 2 I/O error, 3 syntax or validation error,
4 runtime error.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import __version__
from .errors import ParseError, SimulationError, ValidationError
from .harness import TestCase, execute_program, parse_truth_table, run_test_suite
from .parser import parse_text
from .program import format_program

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_SYNTAX, EXIT_RUNTIME = 0, 1, 2, 3, 4

USAGE = "Usage: qgame [OPTIONS] FILE ..."

HELP = f"""{USAGE}

Quantum gate and measurement emulator.

Test mode (statistics over oracle cases):
  qgame -c CASE... -n N -f Q... -t T FILE
Execute mode (measurement history and amplitude tables):
  qgame [-x TT] -n N [-f Q...] [-t T] FILE

Options:
  -c CASE...  test cases BITS-OUTPUT, e.g. 1000-0 (truth-table column, answer)
  -x TT       oracle truth table for execute mode, e.g. 1000
  -n N        number of qubits
  -f Q...     final measurement qubits, most significant first
  -t T        error threshold for counting misses (ignored by execute mode)
  -v          print version
  -h          print this help

Qubit indices must lie in [0, N); a negative index such as (HADAMARD -2)
is rejected as a validation error before anything runs.

Examples:
  qgame -c 1000-0 0100-1 0010-2 0001-3 -n 3 -f 2 1 -t 0.48 grover.qcp
  qgame -x 1000 -n 3 -f 2 1 -t 1 grover.qcp
"""

_INT_RE = re.compile(r"-?\d+")


class UsageError(Exception):
    pass


@dataclass
class CliInvocation:
    mode: str  # "test" | "execute" | "version" | "help"
    cases: List[TestCase] = field(default_factory=list)
    oracle_tt: Optional[Tuple[int, ...]] = None
    n_qubits: Optional[int] = None
    final_qubits: Tuple[int, ...] = ()
    threshold: Optional[float] = None
    file: Optional[str] = None

    def missing(self):
        """Names of required inputs not supplied for this mode."""
        need = {"-n": self.n_qubits is None}
        if self.mode == "test":
            need.update({"-c": not self.cases, "-f": not self.final_qubits,
                         "-t": self.threshold is None})
        return [flag for flag, absent in need.items() if absent]


def _is_flag(tok):
    return len(tok) >= 2 and tok[0] == "-" and (tok[1].isalpha() or tok[1] == "-")


def parse_args(argv):
    """Scan ``argv`` (without the program name) into a :class:`CliInvocation`."""
    argv = list(argv)
    if any(t in ("-h", "--help") for t in argv):
        return CliInvocation("help")
    if any(t in ("-v", "--version") for t in argv):
        return CliInvocation("version")

    case_tokens, positional = [], []
    saw_c = False
    tt = n = threshold = None
    finals = []
    i = 0

    def value(flag):
        if i + 1 >= len(argv) or _is_flag(argv[i + 1]):
            raise UsageError(f"option {flag} needs a value")
        return argv[i + 1]

    while i < len(argv):
        tok = argv[i]
        if not _is_flag(tok):
            positional.append(tok)
            i += 1
        elif tok == "-c":
            saw_c = True
            i += 1
            while i < len(argv) and not _is_flag(argv[i]):
                case_tokens.append(argv[i])
                i += 1
        elif tok == "-f":
            i += 1
            while i < len(argv) and _INT_RE.fullmatch(argv[i]):
                finals.append(int(argv[i]))
                i += 1
        elif tok == "-x":
            raw = value(tok)
            try:
                tt = parse_truth_table(raw)
            except ValueError as e:
                raise UsageError(str(e)) from None
            i += 2
        elif tok == "-n":
            raw = value(tok)
            if not re.fullmatch(r"\d+", raw):
                raise UsageError(f"-n expects a non-negative integer, got {raw!r}")
            n = int(raw)
            i += 2
        elif tok == "-t":
            raw = value(tok)
            try:
                threshold = float(raw)
            except ValueError:
                raise UsageError(f"-t expects a number, got {raw!r}") from None
            i += 2
        else:
            raise UsageError(f"unknown option {tok}")

    if len(positional) > 1:
        raise UsageError(f"unexpected argument {positional[0]!r}")
    if not positional and case_tokens:
        # the last token swallowed by -c is taken as FILE
        positional.append(case_tokens.pop())
    if not positional:
        raise UsageError("missing FILE")
    if saw_c and tt is not None:
        raise UsageError("-c and -x are mutually exclusive")
    try:
        cases = [TestCase.parse(t) for t in case_tokens]
    except ValueError as e:
        raise UsageError(str(e)) from None
    return CliInvocation(
        mode="test" if saw_c else "execute",
        cases=cases,
        oracle_tt=tt,
        n_qubits=n,
        final_qubits=tuple(finals),
        threshold=threshold,
        file=positional[0],
    )


def format_real(x):
    """Three significant digits; e-notation below 1e-3 in magnitude."""
    x = float(x)
    if x == 0.0:
        return "0.00"
    if abs(x) < 1e-3:
        return f"{x:.2e}"
    return f"{x:#.3g}"


IMAG_DISPLAY_FLOOR = 1e-12


def format_amplitude(z):
    z = complex(z)
    if abs(z.imag) < IMAG_DISPLAY_FLOOR:
        return format_real(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{format_real(z.real)}{sign}{format_real(abs(z.imag))}i"


def format_amplitude_table(snapshot):
    rows = [(label, format_amplitude(a), format_real(p)) for label, a, p in snapshot.rows()]
    headers = ("Register", "Amplitude", "Probability")
    w0 = max(len(headers[0]), *(len(r[0]) for r in rows))
    w1 = max(len(headers[1]), *(len(r[1]) for r in rows))
    lines = [f"{headers[0]:<{w0}}  {headers[1]:>{w1}}  {headers[2]}"]
    lines += [f"{r[0]:<{w0}}  {r[1]:>{w1}}  {r[2]}" for r in rows]
    return "\n".join(lines)


def _g(x):
    return f"{float(x):.6g}"


def format_test_result(result, invocation=None):
    lines = [
        f"MISSES: {result.misses}",
        f"MAX-ERROR: {_g(result.max_error)}",
        f"AVG-ERROR: {_g(result.avg_error)}",
        f"MAX-EXPECTED-ORACLES: {_g(result.max_exp_oracles)}",
        f"AVG-EXPECTED-ORACLES: {_g(result.avg_exp_oracles)}",
    ]
    if invocation is not None:
        lines += [
            "INPUTS:",
            f"  FILE: {invocation.file}",
            f"  QUBITS: {invocation.n_qubits}",
            f"  FINAL-QUBITS: {' '.join(map(str, invocation.final_qubits))}",
            f"  THRESHOLD: {_g(invocation.threshold)}",
            f"  CASES: {' '.join(map(str, invocation.cases))}",
        ]
        for case, o in zip(invocation.cases, result.outcomes):
            lines.append(f"  CASE {case}: ERROR {_g(o.error_probability)}, EXPECTED-ORACLES "
                         f"{_g(o.expected_oracles)}{', MISS' if o.is_miss else ''}")
    return "\n".join(lines)


def format_distribution(dist, final_qubits, indent=""):
    width = len(final_qubits)
    return "\n".join(f"{indent}{v} ({v:0{width}b}): {format_real(p)}" for v, p in enumerate(dist))


def format_execution_report(report):
    out = [f"EXPECTED-ORACLES: {_g(report.expected_oracles)}", f"BRANCHES: {len(report.branches)}"]
    for k, b in enumerate(report.branches, start=1):
        out.append("")
        flags = ", HALTED" if b.halted else ""
        out.append(f"BRANCH {k}: PROBABILITY {_g(b.probability)}, "
                   f"ORACLE-CALLS {b.oracle_calls}{flags}")
        out.append("HISTORY: " + (" ".join(map(str, b.history)) if b.history else "(none)"))
        for j, snap in enumerate(b.snapshots, start=1):
            out.append(f"PRINTAMPS {j}:")
            out.append(format_amplitude_table(snap))
        out.append("FINAL AMPLITUDES:")
        out.append(format_amplitude_table(b.final))
        if b.distribution is not None:
            out.append(f"FINAL MEASUREMENT (qubits {' '.join(map(str, report.final_qubits))}):")
            out.append(format_distribution(b.distribution, report.final_qubits, "  "))
    if report.final_qubits:
        out.append("")
        out.append("COMBINED FINAL MEASUREMENT:")
        out.append(format_distribution(report.distribution, report.final_qubits, "  "))
    return "\n".join(out)


def _abort(err, kind, detail, code):
    print(f"{kind}: {detail}" if detail else kind, file=err)
    print("Program aborted.", file=err)
    return code


def run(argv, out=None, err=None):
    """Run the CLI on ``argv`` (without program name); return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        inv = parse_args(argv)
    except UsageError as e:
        print(USAGE, file=err)
        print(f"qgame: {e}", file=err)
        return EXIT_USAGE
    if inv.mode == "help":
        print(HELP, file=out, end="")
        return EXIT_OK
    if inv.mode == "version":
        print(f"qgame {__version__}", file=out)
        return EXIT_OK

    try:
        with open(inv.file, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        return _abort(err, "I/O Error", f"{inv.file}: {getattr(e, 'strerror', None) or e}", EXIT_IO)

    missing = inv.missing()
    if missing:
        print(USAGE, file=err)
        print(f"qgame: {inv.mode} mode also needs {', '.join(missing)}", file=err)
        return EXIT_USAGE

    try:
        program = parse_text(text, inv.file)
    except ParseError as e:
        return _abort(err, "Syntax error", f"{inv.file}:{e}", EXIT_SYNTAX)

    print("PROGRAM:", file=out)
    print(format_program(program), file=out, end="")
    print(file=out)
    try:
        if inv.mode == "test":
            result = run_test_suite(program, inv.n_qubits, inv.cases, inv.final_qubits,
                                    inv.threshold)
            print(format_test_result(result, inv), file=out)
        else:
            report = execute_program(program, inv.n_qubits, inv.oracle_tt, inv.final_qubits)
            print(format_execution_report(report), file=out)
    except ValidationError as e:
        return _abort(err, "Validation error", str(e), EXIT_SYNTAX)
    except ValueError as e:
        print(USAGE, file=err)
        print(f"qgame: {e}", file=err)
        return EXIT_USAGE
    except SimulationError as e:
        return _abort(err, "Runtime error", str(e), EXIT_RUNTIME)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
