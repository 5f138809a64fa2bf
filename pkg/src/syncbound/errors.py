"""Exception hierarchy shared by all modules."""


class SyncError(Exception):
    """Base class for recoverable errors raised by this package."""


class InvalidWordError(SyncError, ValueError):
    pass


class NotSynchronizingError(SyncError):
    pass


class BudgetExceededError(SyncError):
    """The image search grew beyond the configured node budget."""


class PreconditionError(SyncError, ValueError):
    pass


class PremiseViolatedError(SyncError):
    """No word satisfies the escape condition from the given sets."""


class ParseError(SyncError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


class InfeasibleError(SyncError, ValueError):
    """Infeasible tuple or LP parameters."""


class UnboundedError(SyncError):
    pass


class GuaranteeViolation(AssertionError):
    """A proven length or corank guarantee failed on a concrete run.

    This is never expected: it signals either a bug here or a
    counterexample to a published theorem, so it is not a ``SyncError``
    and should not be caught by ordinary error handling.
    """
