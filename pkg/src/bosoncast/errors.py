"""Exception hierarchy for bosoncast.

Validation errors are the caller's fault (bad parameters, malformed states);
numeric errors mean a computation on valid input failed to converge. The CLI
maps the two families onto distinct exit codes.
"""


class BosoncastError(Exception):
    """Base class for all bosoncast errors."""

    exit_code = 1


class ValidationError(BosoncastError, ValueError):
    """Input violates a documented precondition."""

    exit_code = 2


class DomainError(ValidationError):
    """A numeric argument lies outside the domain of an operation."""


class UnsupportedRegimeError(ValidationError):
    """The degraded broadcast-channel results do not apply (eta <= 1/2)."""


class InvalidStateError(ValidationError):
    """A correlation or density matrix is not a valid quantum state."""


class TruncationError(ValidationError):
    """Fock-space truncation discards more probability than the budget allows."""


class NumericError(BosoncastError, ArithmeticError):
    """A numerical procedure failed on valid input."""

    exit_code = 3


class ConvergenceError(NumericError):
    """Root finding or an iterative refinement did not converge."""


class QuadratureError(NumericError):
    """A quadrature grid is too coarse for the requested tolerance."""


class GridError(NumericError):
    """A sampling grid is too coarse or failed its normalization check."""
