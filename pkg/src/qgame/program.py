"""Instruction types for QGAME programs and a canonical pretty-printer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union


@dataclass(frozen=True)
class Qnot:
    q: int


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int


@dataclass(frozen=True)
class Srn:
    q: int


@dataclass(frozen=True)
class Hadamard:
    q: int


@dataclass(frozen=True)
class UTheta:
    q: int
    theta: float


@dataclass(frozen=True)
class U2:
    q: int
    phi: float
    theta: float
    psi: float
    alpha: float


@dataclass(frozen=True)
class Cphase:
    control: int
    target: int
    alpha: float


@dataclass(frozen=True)
class Swap:
    q1: int
    q2: int


@dataclass(frozen=True)
class Oracle:
    inputs: Tuple[int, ...]
    output: int


@dataclass(frozen=True)
class Measure:
    """Fork on qubit ``q``: ``branch1`` runs for outcome 1, ``branch0`` for 0."""

    q: int
    branch1: Tuple["Instruction", ...] = ()
    branch0: Tuple["Instruction", ...] = ()


@dataclass(frozen=True)
class Halt:
    pass


@dataclass(frozen=True)
class Printamps:
    pass


Instruction = Union[Qnot, Cnot, Srn, Hadamard, UTheta, U2, Cphase, Swap,
                    Oracle, Measure, Halt, Printamps]

GATE_TYPES = (Qnot, Cnot, Srn, Hadamard, UTheta, U2, Cphase, Swap)


@dataclass(frozen=True)
class Program:
    instructions: Tuple[Instruction, ...]
    source: str = field(default="<string>", compare=False)

    def __iter__(self):
        return iter(self.instructions)

    def __len__(self):
        return len(self.instructions)


def walk(instructions):
    """Yield every instruction, descending into measurement branches."""
    for instr in instructions:
        yield instr
        if isinstance(instr, Measure):
            yield from walk(instr.branch1)
            yield from walk(instr.branch0)


def qubits_of(instr):
    """Qubit operands of a single instruction (not of nested branches)."""
    if isinstance(instr, (Qnot, Srn, Hadamard, UTheta, U2, Measure)):
        return (instr.q,)
    if isinstance(instr, (Cnot, Cphase)):
        return (instr.control, instr.target)
    if isinstance(instr, Swap):
        return (instr.q1, instr.q2)
    if isinstance(instr, Oracle):
        return (*instr.inputs, instr.output)
    return ()


def _num(x):
    return repr(float(x))


def format_instruction(instr):
    if isinstance(instr, Qnot):
        return f"(QNOT {instr.q})"
    if isinstance(instr, Cnot):
        return f"(CNOT {instr.control} {instr.target})"
    if isinstance(instr, Srn):
        return f"(SRN {instr.q})"
    if isinstance(instr, Hadamard):
        return f"(HADAMARD {instr.q})"
    if isinstance(instr, UTheta):
        return f"(U-THETA {instr.q} {_num(instr.theta)})"
    if isinstance(instr, U2):
        angles = " ".join(_num(a) for a in (instr.phi, instr.theta, instr.psi, instr.alpha))
        return f"(U2 {instr.q} {angles})"
    if isinstance(instr, Cphase):
        return f"(CPHASE {instr.control} {instr.target} {_num(instr.alpha)})"
    if isinstance(instr, Swap):
        return f"(SWAP {instr.q1} {instr.q2})"
    if isinstance(instr, Oracle):
        return "(ORACLE " + " ".join(str(q) for q in (*instr.inputs, instr.output)) + ")"
    if isinstance(instr, Halt):
        return "(HALT)"
    if isinstance(instr, Printamps):
        return "(PRINTAMPS)"
    raise TypeError(f"not a single-line instruction: {instr!r}")


def format_program(program, indent="  "):
    """Render a program as canonical source text that parses back to an equal program."""
    lines = []

    def emit(instrs, depth):
        pad = indent * depth
        for instr in instrs:
            if isinstance(instr, Measure):
                lines.append(f"{pad}(MEASURE {instr.q})")
                emit(instr.branch1, depth + 1)
                lines.append(f"{pad}(END)")
                emit(instr.branch0, depth + 1)
                lines.append(f"{pad}(END)")
            else:
                lines.append(pad + format_instruction(instr))

    emit(program.instructions if isinstance(program, Program) else program, 0)
    return "\n".join(lines) + ("\n" if lines else "")
