"""Exception and warning types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """A trial energy lies outside the region where the method is defined.

    Raised when the quadratic confinement strength is not positive, or when a
    square-root argument of a quantization condition goes negative. The root
    scanner treats it as "skip this subinterval".
    """


class DegenerateIndexError(ZeroDivisionError):
    """The Frobenius recurrence hit a vanishing denominator (2P a non-positive integer)."""


class SeriesOverflowError(OverflowError):
    """A series coefficient left the representable floating-point range."""


class TruncationWarning(UserWarning):
    """The truncated Frobenius series has not converged at the evaluation point."""

    def __init__(self, message: str, tail: float = float("nan")):
        super().__init__(message)
        self.tail = tail


class NoRootFound(UserWarning):
    """No sign change of the residual was found in the energy window."""

    def __init__(self, message: str, residual_min: float = float("nan"),
                 residual_max: float = float("nan")):
        super().__init__(message)
        self.residual_min = residual_min
        self.residual_max = residual_max


class DomainEverywhereInvalid(DomainError):
    """Not a single scan point of the energy window was evaluable."""


class SelectionFailure(RuntimeError):
    """No residual variant reproduces the tabulated energies."""


class IntegrationBlowup(ArithmeticError):
    """The radial integrator produced a non-finite value."""


class InvalidAsymptotics(DomainError):
    """The quadratic coefficient is not positive, so there is no confining Gaussian tail."""
