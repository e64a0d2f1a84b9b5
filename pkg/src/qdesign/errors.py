"""Shared exception types."""


class PreconditionError(ValueError):
    """An argument is outside the documented domain of an operation."""


class FormatError(ValueError):
    """A custom-symmetry document is malformed."""


class InvariantError(RuntimeError):
    """An internal exactness invariant failed (e.g. a division left a remainder).

    This never indicates bad user input; it indicates a bug.
    """


class ResourceLimitError(RuntimeError):
    """A configurable search budget or size cap was exceeded.

    ``lower`` and ``upper`` (when set) bracket the still-unresolved answer:
    the true minimal cost lies in [lower, upper].
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
