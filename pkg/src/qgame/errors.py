"""Exception hierarchy shared by the parser, simulator and CLI."""


class QgameError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QgameError):
    """A positioned syntax error in program text."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class LexError(ParseError):
    """Malformed literal found while tokenizing."""


class ValidationError(QgameError):
    """A well-formed program that cannot run with the given parameters."""


class SimulationError(QgameError):
    """Runtime failure while executing a program."""


class OracleLimitError(SimulationError):
    pass


class NonUnitaryError(SimulationError, ValueError):
    pass
