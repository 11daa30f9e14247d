"""Exception hierarchy shared by the library and the command line."""


class SeriesError(Exception):
    """Base class for every error raised by :mod:`mfps`."""


class ArgumentError(SeriesError, ValueError):
    """An argument violates an operation's precondition."""


class DimensionError(ArgumentError):
    """Variable counts or vector lengths do not agree."""


class PreconditionError(SeriesError):
    """A theorem hypothesis required by the operation does not hold."""


class CompositionError(SeriesError):
    """The composition cannot be formed by the requested route."""


class CompositionDivergedError(CompositionError):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


class CompositionUndecidedError(CompositionError):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


class InversionError(SeriesError):
    """No compositional inverse exists, or it is outside the supported regime.

    ``reason`` is one of ``"unit"``, ``"singular"`` or ``"nonaffine-unit"``.
    """

    def __init__(self, message, reason):
        super().__init__(message)
        self.reason = reason


class ExpressionSyntaxError(SeriesError, ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class VariableRangeError(ExpressionSyntaxError):
    pass


class TrivialCompositionWarning(UserWarning):
    """Composition with the all-zero vector returned the constant 1."""
