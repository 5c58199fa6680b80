"""Exception hierarchy shared by the whole package."""


class LatticeError(ValueError):
    """Base class for all toolkit errors."""


class InvalidInputError(LatticeError):
    """Malformed argument: bad axis, bad dimension, bad exponent, bad file."""


class DomainError(LatticeError):
    """Value outside the mathematical domain of the operation (e.g. negative
    entries passed to an operation defined for nonnegative functions)."""


class DegenerateInputError(LatticeError):
    """Structurally valid but degenerate input (zero function, empty set)."""


class PreconditionError(LatticeError):
    """A stated precondition does not hold (e.g. a norm constraint)."""


class BudgetExceededError(LatticeError):
    """An enumeration would exceed the configured budget.

    Carries the estimated instance count so callers can report it.
    """

    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"enumeration would visit {estimate} subsets, over the budget of {budget}"
        )
