"""Exception types shared by all cmlab modules."""

__all__ = ["DomainError", "IntegrationError", "BracketError"]


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class IntegrationError(RuntimeError):
    """A quadrature routine could not reach the requested tolerance.

    Carries the best error bound achieved and the number of integrand
    evaluations spent, so callers can decide whether to retry with a
    larger budget or a looser tolerance.
    """

    def __init__(self, message, est_error=None, evaluations=None):
        super().__init__(message)
        self.est_error = est_error
        self.evaluations = evaluations


class BracketError(RuntimeError):
    """A bisection precondition failed: the requested bracket does not
    straddle a pass/fail boundary."""
