"""Exception types raised by the solvers."""


class DiffTowerError(Exception):
    """Base class for all package errors."""


class FactorizationError(DiffTowerError):
    pass


class RegularityBoundError(DiffTowerError):
    """Raised when a search cutoff for a regularity problem cannot be established."""


class SolverError(DiffTowerError):
    pass


class IterationLimitError(SolverError):
    pass


class ParseError(DiffTowerError):
    """Syntax or elaboration error in a problem file, with a source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
