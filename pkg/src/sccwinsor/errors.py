"""Exception hierarchy shared across the package."""


class SccWinsorError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SccWinsorError):
    """Input data or configuration violates a documented constraint."""


class ParseError(ValidationError):
    """A data file could not be parsed; carries the offending line number."""

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class LinkError(ValidationError):
    """A record references an identifier that does not exist."""


class ConvergenceError(SccWinsorError):
    """Fixed-point iteration failed to converge; carries the last iterates."""

    def __init__(self, message, last_iterates=()):
        self.last_iterates = tuple(last_iterates)
        super().__init__(message)
