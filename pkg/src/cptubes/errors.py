"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class BracketError(RuntimeError):
    """Eigenvalue bracketing failed below the configured ceiling."""


class InconsistencyError(RuntimeError):
    """An internal positivity or identity guarantee was violated."""
