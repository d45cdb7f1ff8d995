"""Exception hierarchy shared by the engines and the CLI."""


class HgdError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(HgdError, ValueError):
    """A parameter tuple, bit vector or truncation is malformed."""


class BudgetExceeded(HgdError, RuntimeError):
    """An exhaustive enumeration would exceed the configured bit budget."""

    def __init__(self, bits: int, budget: int, what: str = "enumeration"):
        self.bits = bits
        self.budget = budget
        super().__init__(f"{what} needs {bits} free bits, budget is {budget}")


class Unsupported(HgdError):
    """The request is outside the domain where a formula is known."""


class InvariantViolation(HgdError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
