"""Exception types shared by all avoider-lab modules."""


class InvalidInputError(ValueError):
    """Raised when an argument fails a structural precondition (bad
    permutation, malformed path string, height sequence violating the
    growth condition, out-of-range value)."""


class DomainError(ValueError):
    """Raised when a structurally valid input lies outside an operation's
    mathematical domain (e.g. a decomposable permutation, a pattern
    occurrence where avoidance is required)."""


class InvalidHeightError(DomainError):
    """Raised when a height exceeds the current peak-insertion list
    length during reconstruction.  Unreachable for height lists that
    satisfy the growth condition; kept as a hard guard."""
