"""Exception types shared across the package."""


class TaxicaError(Exception):
    """Base class for all errors raised by taxica."""


class ParseError(TaxicaError):
    """Raised when CSV input cannot be turned into a contingency table."""


class ValidationError(TaxicaError):
    """Raised when data violates a precondition or an invariant."""


class NumericalError(TaxicaError):
    """Raised when a numerical routine fails to meet its accuracy contract."""
