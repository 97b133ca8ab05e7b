"""Exception types shared across the library."""


class DiscWitnessError(Exception):
    """Base class for all library errors."""


class MalformedSpec(DiscWitnessError):
    """Shape specification is syntactically or semantically invalid."""


class NotStrictlyConvex(DiscWitnessError):
    """Support function fails the strict-convexity margin h + h'' > eps0."""

    def __init__(self, theta, value, eps0):
        self.theta = float(theta)
        self.value = float(value)
        self.eps0 = float(eps0)
        super().__init__(
            f"radius of curvature {self.value:.6g} <= {self.eps0:g} "
            f"at theta={self.theta:.6g}"
        )


class ExtremumNotFound(DiscWitnessError):
    """Chart extremum search failed (should be unreachable for valid curves)."""


class QuadratureNoConvergence(DiscWitnessError):
    """Adaptive quadrature did not meet tolerance within the subdivision budget."""


class OrderTooLarge(DiscWitnessError):
    """Moment order exceeds the accuracy budget of the 2D quadrature."""


class MaxOnBoundary(DiscWitnessError):
    """Phase maximum sits on the interval boundary; the leading-term formula does not apply."""


class DegenerateMax(DiscWitnessError):
    """Second derivative at the phase maximum is numerically zero."""


class BracketNearZero(DiscWitnessError):
    """Main-term bracket vanishes to tolerance; the combined ratio is undefined."""


class Infeasible(DiscWitnessError):
    """Decoded shape vector violates strict convexity."""


class NoFeasibleStart(DiscWitnessError):
    """Optimizer start point is infeasible."""
