"""Exception types shared by the numerics modules.

The CLI maps DomainError to exit code 2 and BudgetError/BracketError to
exit code 3; the HTTP service maps them to 422 and 400.
"""


class LandauError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LandauError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BudgetError(LandauError, RuntimeError):
    """A numeric budget (max_terms or max_iters) was exhausted before the
    requested tolerance was reached."""


class BracketError(LandauError, RuntimeError):
    """A sign-change bracket for a root could not be established."""
