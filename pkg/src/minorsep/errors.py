"""Exception types raised across the package."""


class MinorsepError(Exception):
    """Base class for all package errors."""


class StateParseError(MinorsepError, ValueError):
    """Malformed state text, header/data mismatch, or a non-finite entry."""


class InvalidStateError(MinorsepError, ValueError):
    """The state is unusable for the requested operation (e.g. all zero)."""


class DimensionError(MinorsepError, ValueError):
    """Matrix shape or index outside what an operation accepts."""


class NotSeparableError(MinorsepError):
    """Raised when a separable-only operation receives an entangled state.

    The offending selector is kept on ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConvergenceError(MinorsepError, RuntimeError):
    """An iterative routine hit its iteration cap."""
