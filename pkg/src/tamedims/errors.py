"""Exception types shared across the package."""


class TameDimsError(Exception):
    """Base class for all errors raised by this package."""


class InputRangeError(TameDimsError, ValueError):
    """An integer argument lies outside the supported range."""


class NotCoprimeError(TameDimsError, ValueError):
    """Two arguments that must be coprime share a factor."""


class SieveBudgetError(TameDimsError, ValueError):
    """A sieve request would exceed the configured memory budget."""


class FieldMismatchError(TameDimsError, ValueError):
    """Operands live in cyclotomic fields of different conductor."""


class DimensionError(TameDimsError, ValueError):
    """Matrix shapes are incompatible, or a size bound is exceeded."""


class ConsistencyError(TameDimsError, AssertionError):
    """An identity that must hold by construction failed.

    Raised when a computed object contradicts the mathematics it models
    (an irrational inertia trace, a theorem branch that does not close).
    This signals a bug, never bad user input.
    """
