"""Exception hierarchy shared by every module."""


class HilforError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class MalformedInputError(HilforError, ValueError):
    """Structurally broken input: out-of-range indices, ragged tables, bad names."""


class AxiomError(HilforError, ValueError):
    """A table or family fails the axioms it is supposed to satisfy."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DomainError(HilforError, ValueError):
    """Input is well formed but outside the operation's domain (e.g. not prelinear)."""


class NotASemilatticeError(DomainError):
    pass


class ResourceLimitError(HilforError, RuntimeError):
    """An enumeration would exceed its configured cap."""

    exit_code = 3


class InternalInconsistencyError(HilforError, AssertionError):
    """A guaranteed witness was not found; indicates a bug, never expected."""

    exit_code = 2


class ParseError(MalformedInputError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
