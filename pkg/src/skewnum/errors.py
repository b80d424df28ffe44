"""Exception types raised by skewnum."""


class SkewnumError(Exception):
    """Base class for all library errors."""


class NotHermitianError(SkewnumError, ValueError):
    pass


class DimensionMismatchError(SkewnumError, ValueError):
    pass


class NotPositiveError(SkewnumError, ValueError):
    """Raised when a state has eigenvalues below the admissible floor."""


class ConvergenceError(SkewnumError, ArithmeticError):
    pass


class QuadratureError(ConvergenceError):
    """Adaptive quadrature exhausted its panel budget.

    ``estimate`` and ``error`` carry the best value and error bound reached.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
