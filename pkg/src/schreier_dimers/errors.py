"""Exception hierarchy shared by all modules."""


class DimerError(Exception):
    """Base class for every error raised by this package."""


class MissingVariableError(DimerError, KeyError):
    pass


class InexactDivisionError(DimerError, ArithmeticError):
    pass


class NotASquareError(DimerError, ValueError):
    pass


class OddSizeError(DimerError, ValueError):
    pass


class CapExceededError(DimerError):
    """Symbolic computation refused because the matrix exceeds the exact-size cap."""


class BudgetExceededError(DimerError):
    """Exhaustive enumeration exceeded its search-node budget."""


class UnsupportedLevelError(DimerError, ValueError):
    pass


class MalformedGraphError(DimerError, ValueError):
    pass


class DimensionMismatchError(DimerError, ValueError):
    pass


class SingularDenominatorError(DimerError, ZeroDivisionError):
    pass


class InvalidCoverError(DimerError, ValueError):
    pass


class UnsupportedContextError(DimerError, ValueError):
    pass


class UnsupportedWeightsError(DimerError, ValueError):
    pass


class ZeroPartitionError(DimerError, ZeroDivisionError):
    pass


class DegenerateVarianceError(DimerError, ValueError):
    pass
