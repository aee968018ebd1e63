"""Lexer, parser and validator for QGAME program text.

Grammar, informally::

    program  := form*
    form     := "(" NAME operand* ")"
    measure  := "(MEASURE q)" form* "(END)" form* "(END)"

Names are case-insensitive, ``;`` starts a comment running to end of line.
Angles are decimal literals or ``[-]PI[/k]`` with ``k`` a positive integer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import LexError, ParseError, ValidationError
from .program import (Cnot, Cphase, Halt, Hadamard, Measure, Oracle, Printamps, Program,
                      Qnot, Srn, Swap, U2, UTheta, qubits_of, walk)

OPEN, CLOSE, SYMBOL, NUMBER = "open", "close", "symbol", "number"

_DECIMAL_RE = re.compile(r"-?\d+(\.\d+)?([eE][-+]?\d+)?")
_INT_RE = re.compile(r"-?\d+")
_PI_RE = re.compile(r"(-?)PI(?:/(.*))?", re.IGNORECASE)
_LOOKS_NUMERIC = re.compile(r"-?[\d.]")

# placeholder some QGAME listings put before the oracle's qubit operands
ORACLE_PLACEHOLDER = "ORACLE-TT"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __str__(self):
        return self.text


def _classify(word, line, col):
    if _PI_RE.fullmatch(word):
        sign, denom = _PI_RE.fullmatch(word).groups()
        if denom is not None and not (denom.isdigit() and int(denom) > 0):
            raise LexError(f"bad angle denominator in {word!r}", line, col)
        return Token(NUMBER, word.upper(), line, col)
    if _LOOKS_NUMERIC.match(word):
        if not _DECIMAL_RE.fullmatch(word):
            raise LexError(f"malformed number literal {word!r}", line, col)
        return Token(NUMBER, word.upper(), line, col)
    return Token(SYMBOL, word.upper(), line, col)


def tokenize(text):
    """Split program text into a list of :class:`Token`."""
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0]
        i, n = 0, len(line)
        while i < n:
            ch = line[i]
            if ch.isspace():
                i += 1
            elif ch in "()":
                tokens.append(Token(OPEN if ch == "(" else CLOSE, ch, lineno, i + 1))
                i += 1
            else:
                j = i
                while j < n and not line[j].isspace() and line[j] not in "()":
                    j += 1
                tokens.append(_classify(line[i:j], lineno, i + 1))
                i = j
    return tokens


def parse_angle(token):
    """Radians denoted by a number token (decimal literal or PI form)."""
    if token.kind != NUMBER:
        raise ParseError(f"expected an angle, got {token.text!r}", token.line, token.column)
    m = _PI_RE.fullmatch(token.text)
    if m:
        sign, denom = m.groups()
        if denom is not None and not (denom.isdigit() and int(denom) > 0):
            raise LexError(f"bad angle denominator in {token.text!r}", token.line, token.column)
        value = math.pi if denom is None else math.pi / int(denom)
        return -value if sign else value
    value = float(token.text)
    if not math.isfinite(value):
        raise LexError(f"angle {token.text!r} is not finite", token.line, token.column)
    return value


def _qubit(token):
    if token.kind != NUMBER or not _INT_RE.fullmatch(token.text):
        raise ParseError(f"expected a qubit index, got {token.text!r}", token.line, token.column)
    return int(token.text)


# name -> (number of qubit operands, number of angle operands, constructor)
_SIMPLE_FORMS = {
    "QNOT": (1, 0, Qnot),
    "CNOT": (2, 0, Cnot),
    "SRN": (1, 0, Srn),
    "HADAMARD": (1, 0, Hadamard),
    "U-THETA": (1, 1, UTheta),
    "U2": (1, 4, U2),
    "CPHASE": (2, 1, Cphase),
    "SWAP": (2, 0, Swap),
    "HALT": (0, 0, Halt),
    "PRINTAMPS": (0, 0, Printamps),
}
_MEASURE_NAMES = ("MEASURE", "MEASURED")


@dataclass
class _Form:
    head: Token
    args: list
    open: Token


def _group_forms(tokens):
    forms = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == CLOSE:
            raise ParseError("unmatched ')'", tok.line, tok.column)
        if tok.kind != OPEN:
            raise ParseError(f"bare token {tok.text!r} outside parentheses", tok.line, tok.column)
        j = i + 1
        body = []
        while j < len(tokens) and tokens[j].kind != CLOSE:
            if tokens[j].kind == OPEN:
                raise ParseError("nested '(' inside an instruction", tokens[j].line, tokens[j].column)
            body.append(tokens[j])
            j += 1
        if j == len(tokens):
            raise ParseError("unclosed '('", tok.line, tok.column)
        if not body:
            raise ParseError("empty instruction '()'", tok.line, tok.column)
        if body[0].kind != SYMBOL:
            raise ParseError(f"instruction name expected, got {body[0].text!r}",
                             body[0].line, body[0].column)
        forms.append(_Form(body[0], body[1:], tok))
        i = j + 1
    return forms


def _arity_error(form, expected):
    return ParseError(f"{form.head.text} expects {expected}, got {len(form.args)} operand(s)",
                      form.head.line, form.head.column)


def _build(form):
    name = form.head.text
    args = form.args
    if name in _SIMPLE_FORMS:
        n_q, n_a, ctor = _SIMPLE_FORMS[name]
        if len(args) != n_q + n_a:
            parts = []
            if n_q:
                parts.append(f"{n_q} qubit(s)")
            if n_a:
                parts.append(f"{n_a} angle(s)")
            raise _arity_error(form, " and ".join(parts) or "no operands")
        qs = [_qubit(t) for t in args[:n_q]]
        angles = [parse_angle(t) for t in args[n_q:]]
        return ctor(*qs, *angles)
    if name == "ORACLE":
        if args and args[0].kind == SYMBOL and args[0].text == ORACLE_PLACEHOLDER:
            args = args[1:]
        if len(args) < 2:
            raise _arity_error(form, "at least one input qubit and one output qubit")
        qs = [_qubit(t) for t in args]
        if len(set(qs)) != len(qs):
            raise ParseError("ORACLE qubits must be pairwise distinct",
                             form.head.line, form.head.column)
        return Oracle(tuple(qs[:-1]), qs[-1])
    raise ParseError(f"unknown instruction {name!r}", form.head.line, form.head.column)


def parse_program(tokens, source="<string>"):
    """Build a :class:`Program` from a token list."""
    forms = _group_forms(tokens)
    pos = 0

    def block(opener):
        # Returns instructions up to the terminating (END), or to EOF at top level.
        nonlocal pos
        out = []
        while pos < len(forms):
            form = forms[pos]
            name = form.head.text
            pos += 1
            if name == "END":
                if form.args:
                    raise _arity_error(form, "no operands")
                if opener is None:
                    raise ParseError("(END) outside a measurement", form.head.line, form.head.column)
                return tuple(out)
            if name in _MEASURE_NAMES:
                if len(form.args) != 1:
                    raise _arity_error(form, "1 qubit")
                q = _qubit(form.args[0])
                b1 = block(form)
                b0 = block(form)
                out.append(Measure(q, b1, b0))
            else:
                out.append(_build(form))
        if opener is not None:
            raise ParseError("missing (END) for measurement", opener.open.line, opener.open.column)
        return tuple(out)

    return Program(block(None), source)


def parse_text(text, source="<string>"):
    return parse_program(tokenize(text), source)


def load_program(path):
    """Read and parse a program file. ``OSError`` propagates to the caller."""
    path = Path(path)
    return parse_text(path.read_text(encoding="utf-8"), str(path))


def oracle_arities(program):
    """Set of input counts over all ORACLE instructions in the program."""
    return {len(i.inputs) for i in walk(program.instructions) if isinstance(i, Oracle)}


def validate_program(program, n_qubits, truth_table_len=None):
    """Check qubit ranges, distinct operands and oracle arity; return the program."""
    for instr in walk(program.instructions):
        qs = qubits_of(instr)
        for q in qs:
            if not 0 <= q < n_qubits:
                raise ValidationError(
                    f"qubit index {q} out of range [0, {n_qubits}) in {type(instr).__name__.upper()}")
        if len(set(qs)) != len(qs):
            raise ValidationError(f"repeated qubit operand in {instr}")
    for m in sorted(oracle_arities(program)):
        if truth_table_len is None:
            raise ValidationError("program calls ORACLE but no truth table was supplied")
        if truth_table_len != 2 ** m:
            raise ValidationError(
                f"ORACLE with {m} input(s) needs a truth table of length {2 ** m}, "
                f"got {truth_table_len}")
    return program
