"""Exception hierarchy.

DomainError covers user-facing input problems (CLI exit code 2); everything
else escaping the library is treated as an internal failure (exit code 1).
"""


class DomainError(ValueError):
    """Invalid input: bad permutation text, mismatched degrees, ..."""


class DegreeMismatchError(DomainError):
    pass


class GroupOrderCapExceeded(DomainError):
    """Group materialization would exceed the configured order cap."""


class OrbitCapExceeded(DomainError):
    """Braid-orbit enumeration would exceed the configured cap."""


class SearchCapExceeded(DomainError):
    """An S_n backtracking search was requested beyond its degree cap."""


class BudgetExceeded(DomainError):
    """A finite-field evaluation would exceed the point budget."""
