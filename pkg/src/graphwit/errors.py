"""Exception types shared across the package."""


class GraphwitError(Exception):
    """Base class for all package errors."""


class UsageError(GraphwitError, ValueError):
    """Invalid arguments, malformed files, unknown names.  CLI exit code 2."""


class CapExceededError(GraphwitError):
    """A documented size cap was exceeded.  CLI exit code 3."""


class PreconditionError(UsageError):
    """A construction lemma's precondition failed; carries the offending detail."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class VerificationError(GraphwitError):
    """A witness failed verification.  CLI exit code 1."""
