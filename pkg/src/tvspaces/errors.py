"""Exception types shared across the toolkit."""


class TvsError(Exception):
    """Base class for all toolkit errors."""


class QuantaleMismatchError(TvsError, TypeError):
    """Operands belong to different quantales."""


class CarrierMismatchError(TvsError, TypeError):
    """Relation or map shapes do not line up."""


class StructuralError(TvsError, ValueError):
    """Malformed input data: bad tables, dangling labels, partial maps."""


class PreconditionError(TvsError, ValueError):
    """A documented operation precondition does not hold."""


class UnsupportedOperationError(TvsError, RuntimeError):
    """The operation is not defined for this quantale or monad instance."""


class BudgetExceededError(TvsError, RuntimeError):
    """An enumeration outgrew its configured budget (distinct from a negative answer)."""


class ParseError(StructuralError):
    """Text-format syntax error, carrying the source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
