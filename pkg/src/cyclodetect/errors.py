"""Exception types shared across the package."""


class CyclodetectError(Exception):
    """Base class for package errors."""


class ConfigurationError(CyclodetectError, ValueError):
    """Invalid parameters or configuration (CLI exit code 2)."""


class DomainError(CyclodetectError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NumericalError(CyclodetectError, ArithmeticError):
    """A computation produced non-finite or otherwise unusable values (CLI exit code 3)."""
