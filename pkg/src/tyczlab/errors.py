"""Exception types shared across the package."""

from __future__ import annotations


class TyczError(Exception):
    """Base class for all computational errors raised by this package."""


class UnknownFamily(TyczError):
    """Family tag does not name a catalog family."""


class ParamOutOfRange(TyczError):
    """A family/potential parameter violates its range constraint."""


class OutOfDomain(TyczError):
    """Evaluation point lies outside the potential's domain."""


class OutOfInterval(TyczError):
    """t lies outside the family's maximal interval of definition."""


class OrderTooLarge(TyczError):
    """Requested jet order exceeds the configured cap."""


class JetOrderInsufficient(TyczError):
    """A curvature quantity needs higher-order jets than supplied."""


class JetOverflow(TyczError):
    """Jet coefficients overflowed; retry with extended precision."""


class NotPositiveDefinite(TyczError):
    """Metric matrix failed positive definiteness at the given point."""


class QuadratureFailure(TyczError):
    """Adaptive quadrature could not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class EmptySpace(TyczError):
    """Every monomial norm diverges: the weighted Hilbert space is {0}."""


class NoConvergence(TyczError):
    """Kernel degree blocks stopped decaying within the degree cap."""


class IllConditioned(TyczError):
    """Least-squares system condition estimate above threshold."""


class TailNotConverged(TyczError):
    """Series tail cannot be certified below tolerance within budget."""


class DegenerateProfile(TyczError):
    """ψ-profile is NaN or admits no interval with y > 0 and ψ(y) > 0."""


class NotRepresentable(TyczError):
    """e^Φ has no monomial Taylor expansion, so the check does not apply."""
