class WaringError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(WaringError, ValueError):
    """An operation was called outside its stated domain."""


class BudgetExceeded(WaringError):
    """A brute-force computation would exceed its operation budget."""

    def __init__(self, needed, budget, what="computation"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what} needs ~{needed:.3g} operations, budget is {budget:.3g}")


class DataError(WaringError):
    """Malformed or missing bundled/user data."""


class ConvergenceError(WaringError):
    """An iterative method failed to reach its tolerance.

    ``estimate`` carries the best value reached.
    """

    def __init__(self, message, estimate=None, error=None):
        self.estimate = estimate
        self.error = error
        super().__init__(message)


DEFAULT_BUDGET = 10 ** 8
