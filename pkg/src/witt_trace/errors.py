"""Exception types shared across the package."""


class WittTraceError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class RingMismatchError(WittTraceError, TypeError):
    """Operands live over different coefficient rings (or orders, truncation sets)."""


class NotDivisible(WittTraceError, ArithmeticError):
    """``n * b = a`` has no solution, or no unique one, in the ring."""


class NotIntegral(WittTraceError, ArithmeticError):
    """A recursive inversion needed a division that fails at index ``n``."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"not integral at index {n}")


class IntegralityViolation(AssertionError):
    """A value that must be integral by theory was not; this is a bug, not bad input."""


class InvalidTruncationSet(WittTraceError, ValueError):
    pass


class NotAnEndomorphism(WittTraceError, ValueError):
    pass
