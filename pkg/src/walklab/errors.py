"""Exception types shared across the package."""


class WalklabError(Exception):
    """Base class for all package errors."""


class DimensionError(WalklabError, ValueError):
    pass


class InsufficientDataError(WalklabError, ValueError):
    pass


class ZeroPolynomialError(WalklabError, ZeroDivisionError):
    pass


class IntegrityError(WalklabError):
    """An internal consistency check failed; always a bug, never user error."""


class BudgetExceeded(WalklabError):
    pass


class PreconditionError(WalklabError, ValueError):
    pass


class Graph6ParseError(WalklabError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class TheoremViolation(WalklabError):
    """A verifier found a counterexample to a proven statement.

    Either the implementation or a transcribed construction is wrong.
    """
