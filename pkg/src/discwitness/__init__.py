"""Numerical toolkit for the disc characterization of strictly convex
plane domains: moment integrals with a complex exponential weight, Laplace
leading-term asymptotics, width/curvature constraints, the inscribed-disc
argument, and shape optimization toward the disc."""

from .errors import (
    BracketNearZero,
    DegenerateMax,
    DiscWitnessError,
    ExtremumNotFound,
    Infeasible,
    MalformedSpec,
    MaxOnBoundary,
    NoFeasibleStart,
    NotStrictlyConvex,
    OrderTooLarge,
    QuadratureNoConvergence,
)
from .geometry import (
    AntipodalPair,
    BoundaryPoint,
    ChordChart,
    CircleCurve,
    EllipseCurve,
    FourierCurve,
    SupportCurve,
    antipodal,
    arclength,
    build_curve,
    chord_chart,
    perimeter,
    point_at,
)
from .logscale import LogComplex

__all__ = [name for name in dir() if not name.startswith("_")]
