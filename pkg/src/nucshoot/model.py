"""Model definitions for the radial two-amplitude nucleon system.

The state is a phase-plane point (f, g) where g is the upper radial
amplitude and f the lower one.  The radial system

    f' + (2/r) f = g (f^2 - a g^2 + b),      g' = f (1 - g^2),

with couplings a, b > 0, has a removable singularity at r = 0 forced by
regularity (f(0) = 0, g(0) = x).  Dropping the 2f/r friction term gives
the autonomous companion system, which is Hamiltonian with energy

    H(f, g) = f^2 (1 - g^2) / 2 + a g^4 / 4 - b g^2 / 2.

This module holds the parameter container with its regime taxonomy, the
two vector fields, the energy and its gradient, the critical-point
catalog, the two closed-form solutions (the zero solution and the
g == 1 hyperbolic-cotangent profile), and the map from physical scales
to (a, b).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "Regime",
    "PointKind",
    "ModelParams",
    "PhasePoint",
    "CriticalPoint",
    "SingularRadiusError",
    "classify_regime",
    "rhs_radial",
    "rhs_conservative",
    "hamiltonian",
    "hamiltonian_gradient",
    "critical_points",
    "exact_trivial",
    "exact_coth",
    "map_physical_params",
]

# Tolerance band used to flag near-critical coupling combinations; exact
# floating-point equality on a == 2b or a == b would be meaningless.
REGIME_TOL = 1e-12


class Regime(enum.Enum):
    """Coupling regimes of the pair (a, b)."""

    SUPERCRITICAL = "Supercritical"     # a - 2b > 0: decaying states possible
    CRITICAL = "Critical"               # a = 2b
    SUBCRITICAL_AB = "SubcriticalAB"    # b < a < 2b
    DEGENERATE = "Degenerate"           # a = b
    SUBCRITICAL = "Subcritical"         # a < b


class PointKind(enum.Enum):
    LOCAL_MIN = "LocalMin"
    SADDLE = "Saddle"


class SingularRadiusError(ValueError):
    """Raised when the singular radial field is evaluated at r <= 0."""


@dataclass(frozen=True)
class ModelParams:
    """Coupling pair (a, b); a scales the quartic term, b the eigenvalue term."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("couplings must be finite")
        if self.a <= 0.0 or self.b <= 0.0:
            raise ValueError("couplings a, b must be strictly positive")

    @property
    def regime(self) -> Regime:
        return classify_regime(self)

    @property
    def decay_rate_bound(self) -> float:
        """Guaranteed exponential decay rate min{b/2, (2a-b)/(2a)}.

        Positive whenever 2a > b; callers in other regimes get the raw
        (possibly nonpositive) value and must check.
        """
        return min(self.b / 2.0, (2.0 * self.a - self.b) / (2.0 * self.a))

    def admissible_f_bound(self) -> float:
        """Half-width in f of the admissible region at |g| = 1 (sqrt(a-b))."""
        if self.a <= self.b:
            raise ValueError("admissible region bound requires a > b")
        return math.sqrt(self.a - self.b)


@dataclass(frozen=True)
class PhasePoint:
    """Phase-plane point (f, g), optionally tagged with its radius r."""

    f: float
    g: float
    r: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.f) and math.isfinite(self.g)):
            raise ValueError("phase point components must be finite")
        if self.r is not None and not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError("radius must be finite and nonnegative")


@dataclass(frozen=True)
class CriticalPoint:
    location: PhasePoint
    kind: PointKind


def classify_regime(params: ModelParams, tol: float = REGIME_TOL) -> Regime:
    """Bucket (a, b) by the sign structure of a - 2b and a - b.

    A tolerance band of width `tol` around the degenerate lines makes the
    classification robust to round-off in derived parameter values.
    """
    a, b = params.a, params.b
    d2 = a - 2.0 * b
    if d2 > tol:
        return Regime.SUPERCRITICAL
    if abs(d2) <= tol:
        return Regime.CRITICAL
    d1 = a - b
    if abs(d1) <= tol:
        return Regime.DEGENERATE
    if d1 > tol:
        return Regime.SUBCRITICAL_AB
    return Regime.SUBCRITICAL


def rhs_radial(r: float, p: PhasePoint, params: ModelParams) -> tuple[float, float]:
    """Velocity (f', g') of the singular radial system at radius r > 0."""
    if r <= 0.0:
        raise SingularRadiusError(
            "radial field is singular at r <= 0; start from the series state"
        )
    f, g = p.f, p.g
    df = -(2.0 / r) * f + g * (f * f - params.a * g * g + params.b)
    dg = f * (1.0 - g * g)
    return (df, dg)


def rhs_conservative(p: PhasePoint, params: ModelParams) -> tuple[float, float]:
    """Velocity of the autonomous companion system (no 2f/r friction)."""
    f, g = p.f, p.g
    df = g * (f * f - params.a * g * g + params.b)
    dg = f * (1.0 - g * g)
    return (df, dg)


def hamiltonian(p: PhasePoint, params: ModelParams) -> float:
    """Conserved energy of the companion system."""
    f2 = p.f * p.f
    g2 = p.g * p.g
    return 0.5 * f2 * (1.0 - g2) + 0.25 * params.a * g2 * g2 - 0.5 * params.b * g2


def hamiltonian_gradient(p: PhasePoint, params: ModelParams) -> tuple[float, float]:
    """(dH/df, dH/dg) in closed form."""
    f, g = p.f, p.g
    df = f * (1.0 - g * g)
    dg = -f * f * g + params.a * g ** 3 - params.b * g
    return (df, dg)


def critical_points(params: ModelParams) -> list[CriticalPoint]:
    """Stationary points of H with their type.

    For a > b: a saddle at the origin, minima at (0, +/-sqrt(b/a)) and
    saddles at (+/-sqrt(a-b), +/-1).  For a == b the outer points collide
    at (0, +/-1); H is constant along g = +/-1 there, so the collided
    points are degenerate and labeled saddles.  For a < b all three
    stationary points are saddles.
    """
    a, b = params.a, params.b
    pts = [CriticalPoint(PhasePoint(0.0, 0.0), PointKind.SADDLE)]
    g_in = math.sqrt(b / a)
    if a > b:
        for s in (+1.0, -1.0):
            pts.append(CriticalPoint(PhasePoint(0.0, s * g_in), PointKind.LOCAL_MIN))
        fc = math.sqrt(a - b)
        for sf in (+1.0, -1.0):
            for sg in (+1.0, -1.0):
                pts.append(CriticalPoint(PhasePoint(sf * fc, sg * 1.0), PointKind.SADDLE))
    elif a == b:
        for s in (+1.0, -1.0):
            pts.append(CriticalPoint(PhasePoint(0.0, s * 1.0), PointKind.SADDLE))
    else:
        for s in (+1.0, -1.0):
            pts.append(CriticalPoint(PhasePoint(0.0, s * g_in), PointKind.SADDLE))
    return pts


def exact_trivial(params: ModelParams, r_max: float = 200.0, n: int = 201):
    """The identically-zero solution as a Trajectory on [0, r_max]."""
    from .integrator import Trajectory, Termination, TerminationKind
    import numpy as np

    r = np.linspace(0.0, r_max, n)
    z = np.zeros_like(r)
    term = Termination(TerminationKind.REACHED_RMAX, r_max)
    return Trajectory(r, z.copy(), z.copy(), params, 0.0, term)


# Switch radius below which 1/r - sqrt(a-b)*coth(...) is evaluated by its
# Taylor form; direct evaluation suffers catastrophic cancellation there.
_COTH_TAYLOR_RADIUS = 1e-4


def exact_coth(r: float, params: ModelParams) -> PhasePoint:
    """Closed-form non-decaying solution with g == 1 (requires a > b).

    f(r) = 1/r - sqrt(a-b) * coth(sqrt(a-b) * r), continuously extended by
    f(0) = 0; f tends to -sqrt(a-b) as r grows.
    """
    a, b = params.a, params.b
    if a - b <= 0.0:
        raise ValueError("the g == 1 profile requires a > b")
    if r < 0.0:
        raise ValueError("radius must be nonnegative")
    k = math.sqrt(a - b)
    if r < _COTH_TAYLOR_RADIUS:
        # 1/r - k*coth(k r) = -(k^2) r / 3 + k^4 r^3 / 45 + O(r^5)
        k2 = a - b
        f = -k2 * r / 3.0 + k2 * k2 * r ** 3 / 45.0
    else:
        f = 1.0 / r - k / math.tanh(k * r)
    return PhasePoint(f, 1.0, r)


def map_physical_params(m: float, lam: float, theta: float, mu: float) -> ModelParams:
    """Translate physical scales to couplings: a = 2 m lam / theta, b = 2 m mu."""
    if m <= 0.0 or theta <= 0.0:
        raise ValueError("mass and quartic scale must be strictly positive")
    if lam < 0.0 or mu < 0.0:
        raise ValueError("couplings lam, mu must be nonnegative")
    return ModelParams(2.0 * m * lam / theta, 2.0 * m * mu)
