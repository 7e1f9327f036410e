"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class MacKitError(Exception):
    exit_code = 1


class InputError(MacKitError, ValueError):
    """Invalid input: out-of-range labels, malformed tuples, bad words."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotACocycleError(InputError):
    pass


class ResourceLimitError(MacKitError):
    """A configured size cap would be exceeded."""

    exit_code = 3


class InvariantViolation(MacKitError):
    """An internal identity failed (e.g. a boundary that does not square to zero)."""

    exit_code = 4


class NotOrientableError(MacKitError):
    """Top homology is not infinite cyclic, so no fundamental class exists."""
