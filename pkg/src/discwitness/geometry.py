"""Strictly convex plane curves represented by their support function.

A curve is described by h(theta), the signed distance from the origin to
the support line with outward normal u(theta) = (cos theta, sin theta).
The boundary point with that normal is

    r(theta) = h u + h' u',

the tangent is u', the inward normal is -u, and the radius of curvature is
rho = h + h''.  Strict convexity is the pointwise condition rho > eps0 > 0,
validated on a dense grid at construction.  This parameterization makes the
antipodal map exact (theta -> theta + pi) and the width a two-point formula
L(theta) = h(theta) + h(theta + pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import ExtremumNotFound, MalformedSpec, NotStrictlyConvex

DEFAULT_EPS0 = 1e-3
_VALIDATION_GRID = 4096


def _unit(theta):
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _unit_prime(theta):
    return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)


class SupportCurve:
    """Base class; subclasses supply h and its first two derivatives."""

    eps0: float

    def h(self, theta):
        raise NotImplementedError

    def h1(self, theta):
        raise NotImplementedError

    def h2(self, theta):
        raise NotImplementedError

    def rho(self, theta):
        """Radius of curvature as a function of the normal angle."""
        return self.h(theta) + self.h2(theta)

    def position(self, theta):
        theta = np.asarray(theta, dtype=float)
        h = np.asarray(self.h(theta))[..., None]
        h1 = np.asarray(self.h1(theta))[..., None]
        return h * _unit(theta) + h1 * _unit_prime(theta)

    def scaled(self, c: float) -> "SupportCurve":
        raise NotImplementedError

    def translated(self, dx: float, dy: float) -> "SupportCurve":
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError

    def _validate(self):
        thetas = np.linspace(0.0, 2.0 * math.pi, _VALIDATION_GRID, endpoint=False)
        rho = np.asarray(self.rho(thetas))
        i = int(np.argmin(rho))
        if rho[i] <= self.eps0:
            raise NotStrictlyConvex(thetas[i], rho[i], self.eps0)


@dataclass(frozen=True)
class CircleCurve(SupportCurve):
    center: tuple
    radius: float
    eps0: float = DEFAULT_EPS0

    def __post_init__(self):
        self._validate()

    def h(self, theta):
        cx, cy = self.center
        return self.radius + cx * np.cos(theta) + cy * np.sin(theta)

    def h1(self, theta):
        cx, cy = self.center
        return -cx * np.sin(theta) + cy * np.cos(theta)

    def h2(self, theta):
        cx, cy = self.center
        return -(cx * np.cos(theta) + cy * np.sin(theta))

    def rho(self, theta):
        return np.full_like(np.asarray(theta, dtype=float), self.radius)

    def scaled(self, c):
        return CircleCurve((self.center[0] * c, self.center[1] * c),
                           self.radius * c, self.eps0)

    def translated(self, dx, dy):
        return CircleCurve((self.center[0] + dx, self.center[1] + dy),
                           self.radius, self.eps0)

    def to_spec(self):
        return {"type": "circle", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class EllipseCurve(SupportCurve):
    a: float
    b: float
    center: tuple = (0.0, 0.0)
    rotation: float = 0.0
    eps0: float = DEFAULT_EPS0

    def __post_init__(self):
        self._validate()

    # support function of the centered ellipse: sqrt(a^2 cos^2 + b^2 sin^2)
    def _w(self, psi):
        return (self.a * np.cos(psi)) ** 2 + (self.b * np.sin(psi)) ** 2

    def h(self, theta):
        theta = np.asarray(theta, dtype=float)
        cx, cy = self.center
        psi = theta - self.rotation
        return np.sqrt(self._w(psi)) + cx * np.cos(theta) + cy * np.sin(theta)

    def h1(self, theta):
        theta = np.asarray(theta, dtype=float)
        cx, cy = self.center
        psi = theta - self.rotation
        w = self._w(psi)
        w1 = (self.b ** 2 - self.a ** 2) * np.sin(2.0 * psi)
        return 0.5 * w1 / np.sqrt(w) - cx * np.sin(theta) + cy * np.cos(theta)

    def h2(self, theta):
        theta = np.asarray(theta, dtype=float)
        cx, cy = self.center
        psi = theta - self.rotation
        w = self._w(psi)
        w1 = (self.b ** 2 - self.a ** 2) * np.sin(2.0 * psi)
        w2 = 2.0 * (self.b ** 2 - self.a ** 2) * np.cos(2.0 * psi)
        h0_2 = 0.5 * w2 / np.sqrt(w) - 0.25 * w1 ** 2 / w ** 1.5
        return h0_2 - cx * np.cos(theta) - cy * np.sin(theta)

    def rho(self, theta):
        psi = np.asarray(theta, dtype=float) - self.rotation
        return (self.a * self.b) ** 2 / self._w(psi) ** 1.5

    def scaled(self, c):
        return EllipseCurve(self.a * c, self.b * c,
                            (self.center[0] * c, self.center[1] * c),
                            self.rotation, self.eps0)

    def translated(self, dx, dy):
        return EllipseCurve(self.a, self.b,
                            (self.center[0] + dx, self.center[1] + dy),
                            self.rotation, self.eps0)

    def to_spec(self):
        return {"type": "ellipse", "a": self.a, "b": self.b,
                "center": list(self.center), "rotation": self.rotation}


@dataclass(frozen=True)
class FourierCurve(SupportCurve):
    """h = a0 + sum_k (c_k cos k theta + s_k sin k theta); derivatives term-by-term."""

    a0: float
    cos: tuple = ()
    sin: tuple = ()
    eps0: float = DEFAULT_EPS0
    _k: np.ndarray = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        kmax = max(len(self.cos), len(self.sin))
        object.__setattr__(self, "cos", tuple(self.cos) + (0.0,) * (kmax - len(self.cos)))
        object.__setattr__(self, "sin", tuple(self.sin) + (0.0,) * (kmax - len(self.sin)))
        object.__setattr__(self, "_k", np.arange(1, kmax + 1, dtype=float))
        self._validate()

    def _series(self, theta, deriv):
        theta = np.asarray(theta, dtype=float)
        if len(self._k) == 0:
            base = self.a0 if deriv == 0 else 0.0
            return np.full_like(theta, base)
        k = self._k
        kt = np.multiply.outer(theta, k)
        c = np.asarray(self.cos)
        s = np.asarray(self.sin)
        if deriv == 0:
            out = self.a0 + np.cos(kt) @ c + np.sin(kt) @ s
        elif deriv == 1:
            out = -np.sin(kt) @ (k * c) + np.cos(kt) @ (k * s)
        else:
            out = -np.cos(kt) @ (k * k * c) - np.sin(kt) @ (k * k * s)
        return out

    def h(self, theta):
        return self._series(theta, 0)

    def h1(self, theta):
        return self._series(theta, 1)

    def h2(self, theta):
        return self._series(theta, 2)

    def scaled(self, c):
        return FourierCurve(self.a0 * c,
                            tuple(x * c for x in self.cos),
                            tuple(x * c for x in self.sin), self.eps0)

    def translated(self, dx, dy):
        cos = list(self.cos) or [0.0]
        sin = list(self.sin) or [0.0]
        cos[0] += dx
        sin[0] += dy
        return FourierCurve(self.a0, tuple(cos), tuple(sin), self.eps0)

    def to_spec(self):
        return {"type": "support_fourier", "a0": self.a0,
                "cos": list(self.cos), "sin": list(self.sin)}


def build_curve(spec: dict, eps0: float = DEFAULT_EPS0) -> SupportCurve:
    """Construct a validated curve from a shape-spec dictionary."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise MalformedSpec("shape spec must be a dict with a 'type' field")
    kind = spec["type"]
    try:
        if kind == "circle":
            cx, cy = (float(v) for v in spec.get("center", (0.0, 0.0)))
            r = float(spec["radius"])
            if r <= 0:
                raise MalformedSpec("circle radius must be positive")
            return CircleCurve((cx, cy), r, eps0)
        if kind == "ellipse":
            cx, cy = (float(v) for v in spec.get("center", (0.0, 0.0)))
            a, b = float(spec["a"]), float(spec["b"])
            if a <= 0 or b <= 0:
                raise MalformedSpec("ellipse semi-axes must be positive")
            return EllipseCurve(a, b, (cx, cy), float(spec.get("rotation", 0.0)), eps0)
        if kind == "support_fourier":
            return FourierCurve(float(spec["a0"]),
                                tuple(float(v) for v in spec.get("cos", ())),
                                tuple(float(v) for v in spec.get("sin", ())), eps0)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSpec(f"bad shape spec: {exc}") from exc
    raise MalformedSpec(f"unknown shape type {kind!r}")


@dataclass(frozen=True)
class BoundaryPoint:
    theta: float
    position: np.ndarray
    tangent: np.ndarray
    inward_normal: np.ndarray
    curvature: float
    radius_of_curvature: float
    arclength: float


def arclength(curve: SupportCurve, theta0: float, theta1: float) -> float:
    """Arc length between normal angles theta0 <= theta1 (integral of rho)."""
    if theta1 < theta0:
        raise ValueError("theta1 must be >= theta0")
    val, _ = quad(lambda t: float(curve.rho(t)), theta0, theta1, limit=200)
    return val


def perimeter(curve: SupportCurve) -> float:
    return arclength(curve, 0.0, 2.0 * math.pi)


def point_at(curve: SupportCurve, theta: float) -> BoundaryPoint:
    theta = float(theta)
    rho = float(curve.rho(theta))
    s = arclength(curve, 0.0, theta) if theta >= 0 else -arclength(curve, theta, 0.0)
    return BoundaryPoint(
        theta=theta,
        position=curve.position(theta),
        tangent=_unit_prime(theta),
        inward_normal=-_unit(theta),
        curvature=1.0 / rho,
        radius_of_curvature=rho,
        arclength=s,
    )


@dataclass(frozen=True)
class AntipodalPair:
    s_point: BoundaryPoint
    q_point: BoundaryPoint
    width: float
    w: float
    dq_ds: float


def width_at(curve: SupportCurve, theta) -> float:
    return curve.h(theta) + curve.h(np.asarray(theta) + math.pi)


def tangent_gap(curve: SupportCurve, theta) -> float:
    """w(theta) = (r(q) - r(s)) . t(s); equals -(h'(theta) + h'(theta+pi))."""
    return -(curve.h1(theta) + curve.h1(np.asarray(theta) + math.pi))


def antipodal(curve: SupportCurve, theta: float) -> AntipodalPair:
    sp = point_at(curve, theta)
    qp = point_at(curve, theta + math.pi)
    width = float(curve.h(theta) + curve.h(theta + math.pi))
    w = float((qp.position - sp.position) @ sp.tangent)
    dq_ds = float(curve.rho(theta + math.pi) / curve.rho(theta))
    return AntipodalPair(sp, qp, width, w, dq_ds)


class ChordChart:
    """Boundary as upper/lower graphs y = f(x), y = g(x) in a rotated frame.

    The frame is the global frame rotated by frame_angle about the origin;
    the origin must lie inside the curve so that f(x1) > 0 > g(x2).  In
    the rotated frame the upper arc carries normal angles (0, pi) and the
    lower arc (pi, 2pi); x(theta) is strictly monotone on each arc, so f
    and g are recovered by inverting it.  All chart derivatives come from
    the chain rule through theta(x): f' = -cot(theta),
    f'' = -1 / (rho sin^3 theta).
    """

    _GRID = 2048

    def __init__(self, curve: SupportCurve, frame_angle: float = 0.0):
        self.curve = curve
        self.frame_angle = float(frame_angle)
        thetas = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
        if np.min(self._h(thetas)) <= 0.0:
            raise MalformedSpec(
                "chord chart requires the origin strictly inside the curve"
            )
        self.b = float(self._x(0.0))
        self.a = float(self._x(math.pi))
        # monotone x(theta) tables for inversion starting guesses
        self._tu = np.linspace(0.0, math.pi, self._GRID)
        self._xu = self._x(self._tu)
        self._tl = np.linspace(math.pi, 2.0 * math.pi, self._GRID)
        self._xl = self._x(self._tl)
        self._locate_extrema()

    # rotated-frame support function and boundary coordinates
    def _h(self, theta):
        return self.curve.h(theta + self.frame_angle)

    def _h1(self, theta):
        return self.curve.h1(theta + self.frame_angle)

    def _rho(self, theta):
        return self.curve.rho(theta + self.frame_angle)

    def _x(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self._h(theta) * np.cos(theta) - self._h1(theta) * np.sin(theta)

    def _y(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self._h(theta) * np.sin(theta) + self._h1(theta) * np.cos(theta)

    def _invert(self, x, upper: bool):
        """theta(x) on one arc: interp guess + damped Newton, brentq fallback."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        if np.any(x < self.a - 1e-12) or np.any(x > self.b + 1e-12):
            raise ValueError("x outside chart range")
        xc = np.clip(x, self.a, self.b)
        if upper:
            # x decreasing in theta on [0, pi]
            theta = np.interp(xc, self._xu[::-1], self._tu[::-1])
            lo, hi = 0.0, math.pi
        else:
            theta = np.interp(xc, self._xl, self._tl)
            lo, hi = math.pi, 2.0 * math.pi
        for _ in range(100):
            fx = self._x(theta) - xc
            if np.all(np.abs(fx) <= 1e-13 * max(1.0, abs(self.b), abs(self.a))):
                break
            d = -self._rho(theta) * np.sin(theta)
            step = np.where(np.abs(d) > 1e-30, fx / np.where(d == 0, 1.0, d), 0.0)
            step = np.clip(step, -0.1, 0.1)
            theta = np.clip(theta - step, lo, hi)
        else:
            for i in range(len(theta)):
                if abs(float(self._x(theta[i]) - xc[i])) > 1e-11:
                    theta[i] = brentq(
                        lambda t, xi=xc[i]: float(self._x(t) - xi), lo, hi,
                        xtol=1e-14,
                    )
        return theta[0] if scalar else theta

    def theta_upper(self, x):
        return self._invert(x, upper=True)

    def theta_lower(self, x):
        return self._invert(x, upper=False)

    def f(self, x):
        return self._y(self.theta_upper(x))

    def g(self, x):
        return self._y(self.theta_lower(x))

    def f_prime(self, x):
        t = self.theta_upper(x)
        return -np.cos(t) / np.sin(t)

    def f_second(self, x):
        t = self.theta_upper(x)
        return -1.0 / (self._rho(t) * np.sin(t) ** 3)

    def g_prime(self, x):
        t = self.theta_lower(x)
        return -np.cos(t) / np.sin(t)

    def g_second(self, x):
        t = self.theta_lower(x)
        return -1.0 / (self._rho(t) * np.sin(t) ** 3)

    def _extremum(self, upper: bool):
        """Bracketed root of f' (resp. g') with a Newton polish to 1e-12."""
        mid = math.pi / 2.0 if upper else 3.0 * math.pi / 2.0
        prime = self.f_prime if upper else self.g_prime
        second = self.f_second if upper else self.g_second
        lo = float(self._x(mid + 0.8)) if upper else float(self._x(mid - 0.8))
        hi = float(self._x(mid - 0.8)) if upper else float(self._x(mid + 0.8))
        plo, phi = float(prime(lo)), float(prime(hi))
        if plo * phi >= 0.0 or (plo > 0.0) != upper:
            raise ExtremumNotFound("no sign change of the chart slope")
        x = brentq(lambda xx: float(prime(xx)), lo, hi, xtol=1e-13)
        for _ in range(5):
            x = x - float(prime(x)) / float(second(x))
        if abs(float(prime(x))) > 1e-10:
            raise ExtremumNotFound("Newton polish failed to converge")
        return float(x)

    def _locate_extrema(self):
        self.x1 = self._extremum(upper=True)
        self.x2 = self._extremum(upper=False)
        self.f_x1 = float(self.f(self.x1))
        self.g_x2 = float(self.g(self.x2))
        self.f_pp_x1 = float(self.f_second(self.x1))
        self.g_pp_x2 = float(self.g_second(self.x2))
        if not (self.f_pp_x1 < 0.0 < self.g_pp_x2):
            raise ExtremumNotFound("chart extrema have wrong concavity")


def chord_chart(curve: SupportCurve, frame_angle: float = 0.0) -> ChordChart:
    return ChordChart(curve, frame_angle)
