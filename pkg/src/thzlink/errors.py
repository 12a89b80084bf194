"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ThzError(Exception):
    exit_code = 2


class InvalidArgumentError(ThzError, ValueError):
    """A value violates a documented precondition."""

    exit_code = 2


class OutOfRangeError(InvalidArgumentError):
    """A frequency falls outside the span of an attenuation table."""


class ParseError(ThzError, ValueError):
    """Malformed input file. ``line`` is 1-based when known."""

    exit_code = 1

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line
