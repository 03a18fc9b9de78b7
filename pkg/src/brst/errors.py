class BrstError(Exception):
    """Base class for all errors raised by the package."""


class ConfigurationError(BrstError):
    """Operands were built under incompatible contexts (e.g. truncation orders)."""


class NotAUnit(BrstError, ZeroDivisionError):
    """A formal scalar with vanishing constant term was inverted."""


class CapacityError(BrstError):
    """A result exceeded the polynomial degree cap of the context."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class DomainError(BrstError, ValueError):
    """An operation was applied outside its domain."""


class ContainmentError(BrstError):
    """A submodule expected to be contained in another one is not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ManifestError(BrstError):
    """A manifest failed to parse or validate."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class LiftingError(BrstError):
    """An order-by-order lifting step had no solution."""
