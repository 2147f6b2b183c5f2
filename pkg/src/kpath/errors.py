"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the documented domain of an operation."""


class UnsupportedError(ValueError):
    """The request is well-formed but beyond what this implementation handles."""


class FormatError(ValueError):
    """A textual graph or circuit could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ExtractionError(RuntimeError):
    """Path construction ran out of retries although a path was detected."""
