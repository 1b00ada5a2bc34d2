"""Exception types shared across the package.

Division by zero scalars raises the builtin ZeroDivisionError.
"""


class TransLieError(Exception):
    """Base class for errors raised by this package."""


class IndexOverflowError(TransLieError):
    """A basis index left the supported machine range."""


class UnknownNotFoundError(TransLieError):
    """A referenced unknown is not registered in the system."""


class DomainError(TransLieError):
    """An operator was applied outside its declared domain."""


class BudgetExceededError(TransLieError):
    """An exhaustive enumeration or iteration limit was exceeded."""


class EmptySystemError(TransLieError):
    """Constraint assembly produced no qualifying equation triples."""


class InvalidParamsError(TransLieError):
    """Product parameters failed validation; the report explains why."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class ConfigParseError(TransLieError):
    """A run configuration document is not well-formed."""


class ConfigSchemaError(TransLieError):
    """A run configuration is well-formed but violates the schema."""
