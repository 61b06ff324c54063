"""Adaptive embedded Runge-Kutta integration for the radial system.

A classic Dormand-Prince 5(4) pair drives all three flows (singular
radial, autonomous companion, shifted-friction).  Step size is governed
by a proportional-integral controller on the embedded error estimate;
every accepted step stores a quartic dense-output segment so events can
be localized by bracketed root solving on the interpolant and
trajectories can be resampled at arbitrary radii.

The r = 0 singularity of the radial system is never evaluated: the run
starts at a small handoff radius r_start from the second-order Taylor
state of the regular solution,

    f(r) = f'(0) r + O(r^3),        f'(0) = x (b - a x^2) / 3,
    g(r) = x + f'(0) (1 - x^2) r^2 / 2 + O(r^4),

whose truncation error at the default r_start = 1e-6 sits far below the
absolute tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .model import ModelParams, PhasePoint

__all__ = [
    "IntegratorConfig",
    "EventKind",
    "EventSpec",
    "TerminationKind",
    "Termination",
    "Trajectory",
    "StiffnessError",
    "series_start",
    "integrate_radial",
    "integrate_conservative",
    "integrate_shifted",
    "DEFAULT_CONFIG",
]


class StiffnessError(RuntimeError):
    """Step size underflowed; carries the radius where control failed."""

    def __init__(self, radius: float, message: str | None = None):
        self.radius = radius
        super().__init__(message or f"step size underflow near r = {radius:.6g}")


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-9
    atol: float = 1e-12
    h_init: float = 1e-3
    h_max: float = 10.0
    r_start: float = 1e-6
    r_max: float = 200.0
    blowup_threshold: float = 1e3

    def __post_init__(self):
        fields = (self.rtol, self.atol, self.h_init, self.h_max,
                  self.r_start, self.r_max, self.blowup_threshold)
        if not all(math.isfinite(v) and v > 0.0 for v in fields):
            raise ValueError("all integrator settings must be positive and finite")
        if self.rtol < 1e-14:
            raise ValueError("rtol below 1e-14 is not resolvable in double precision")
        if self.r_start >= self.r_max:
            raise ValueError("r_start must be smaller than r_max")


DEFAULT_CONFIG = IntegratorConfig()


class EventKind(enum.Enum):
    F_CROSSES_ZERO = "FCrossesZero"
    G_CROSSES_ZERO = "GCrossesZero"
    G_SQUARED_REACHES_ONE = "GSquaredReachesOne"
    DECAY_DETECTED = "DecayDetected"
    F_PRIME_CROSSES_ZERO = "FPrimeCrossesZero"


@dataclass(frozen=True)
class EventSpec:
    """Terminal event: kind, sign filter, and decay-detector thresholds.

    direction +1 fires on a rising zero crossing of the event value,
    -1 on a falling one, 0 on either.  eps_decay / r_min apply to
    DecayDetected only: it fires once |f| + |g| drops below eps_decay at
    some radius beyond r_min (the floor suppresses false positives near
    r = 0 where f is small by construction).
    """

    kind: EventKind
    direction: int = 0
    eps_decay: float = 1e-8
    r_min: float = 5.0

    def __post_init__(self):
        if self.direction not in (-1, 0, 1):
            raise ValueError("direction must be -1, 0, or +1")
        if self.eps_decay <= 0.0 or self.r_min <= 0.0:
            raise ValueError("event thresholds must be positive")


class TerminationKind(enum.Enum):
    REACHED_RMAX = "ReachedRmax"
    EVENT = "Event"
    BLOWUP = "Blowup"


@dataclass(frozen=True)
class Termination:
    kind: TerminationKind
    r: float
    event_kinds: tuple[EventKind, ...] = ()

    def describe(self) -> str:
        if self.kind is TerminationKind.EVENT:
            names = "+".join(k.value for k in self.event_kinds)
            return f"Event({names}, r={self.r:.12g})"
        return f"{self.kind.value}(r={self.r:.12g})"


# ---------------------------------------------------------------------------
# Dormand-Prince 5(4) tableau, error weights, and quartic dense-output matrix.

_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# fifth-order weights minus fourth-order weights
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

# Dense-output coefficients: y(r0 + t*h) = y0 + h * sum_s k_s * P_s(t),
# P_s(t) = sum_j P[s][j] * t^(j+1).  Fourth-order accurate on the step.
_P = (
    (1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0, 87487479700.0 / 32700410799.0),
    (0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0),
    (0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0, 701980252875.0 / 199316789632.0),
    (0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0),
    (0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0),
)

# PI controller constants (error exponent 1/5 split into P and I parts).
# Safety 0.65 runs ~35% more steps than the textbook 0.9 but holds the
# conservative-flow energy drift under 1e-8 over r in [0,50] at default
# tolerances, which the energy-conservation contract requires.
_SAFETY = 0.65
_PI_ALPHA = 0.17
_PI_BETA = 0.04
_FAC_MIN = 0.2
_FAC_MAX = 5.0
_MAX_STEPS = 5_000_000
_EVENT_DR = 1e-12          # bisection width target, beats the 1e-10 contract
_TIE_DR = 1e-12            # simultaneous-event ambiguity threshold


def _segment_eval(seg: tuple, r: float) -> tuple[float, float]:
    """Evaluate one dense segment at radius r."""
    r0, h, f0, g0, qf, qg = seg
    t = (r - r0) / h
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    t2 = t * t
    t3 = t2 * t
    t4 = t3 * t
    f = f0 + h * (qf[0] * t + qf[1] * t2 + qf[2] * t3 + qf[3] * t4)
    g = g0 + h * (qg[0] * t + qg[1] * t2 + qg[2] * t3 + qg[3] * t4)
    return f, g


class Trajectory:
    """Dense sampled solution with termination cause.

    samples holds rows (r, f, g, H) at strictly increasing radii; for the
    radial flow the first row is the exact initial state (0, 0, x0, H0).
    Dense-output segments, when present, let sample_at / resample recover
    the solution between accepted steps to interpolation order 4.
    """

    def __init__(self, r, f, g, params: ModelParams, x0: float,
                 termination: Termination, segments=None, series=None,
                 config: IntegratorConfig | None = None):
        self.r = np.asarray(r, dtype=float)
        self.f = np.asarray(f, dtype=float)
        self.g = np.asarray(g, dtype=float)
        self.params = params
        self.x0 = float(x0)
        self.termination = termination
        self.config = config
        self._segments = segments or []
        self._seg_starts = np.array([s[0] for s in self._segments]) if segments else None
        self._series = series  # (c1, d2) Taylor coefficients on [0, r_start)
        g2 = self.g * self.g
        f2 = self.f * self.f
        self.H = 0.5 * f2 * (1.0 - g2) + 0.25 * params.a * g2 * g2 - 0.5 * params.b * g2

    @property
    def samples(self) -> np.ndarray:
        return np.column_stack([self.r, self.f, self.g, self.H])

    @property
    def r_end(self) -> float:
        return float(self.r[-1])

    def sample_at(self, r: float) -> tuple[float, float]:
        """Interpolated (f, g) at one radius inside the computed range."""
        if r <= self.r[0]:
            return float(self.f[0]), float(self.g[0])
        if r >= self.r[-1]:
            return float(self.f[-1]), float(self.g[-1])
        if self._segments:
            first_r0 = self._segments[0][0]
            if r < first_r0:
                return self._series_eval(r)
            idx = int(np.searchsorted(self._seg_starts, r, side="right") - 1)
            idx = max(0, min(idx, len(self._segments) - 1))
            return _segment_eval(self._segments[idx], r)
        # synthetic trajectory without dense segments: linear interpolation
        f = float(np.interp(r, self.r, self.f))
        g = float(np.interp(r, self.r, self.g))
        return f, g

    def _series_eval(self, r: float) -> tuple[float, float]:
        c1, d2 = self._series
        return c1 * r, self.x0 + d2 * r * r

    def resample(self, dr: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Uniform-grid (r, f, g) over the computed range with spacing dr."""
        if dr <= 0.0:
            raise ValueError("resample spacing must be positive")
        n = int(math.floor((self.r_end - float(self.r[0])) / dr)) + 1
        grid = float(self.r[0]) + dr * np.arange(n)
        fs = np.empty(n)
        gs = np.empty(n)
        for i, rv in enumerate(grid):
            fs[i], gs[i] = self.sample_at(float(rv))
        return grid, fs, gs

    def hamiltonian_of(self, f, g) -> np.ndarray:
        g2 = np.asarray(g) ** 2
        f2 = np.asarray(f) ** 2
        return 0.5 * f2 * (1.0 - g2) + 0.25 * self.params.a * g2 * g2 - 0.5 * self.params.b * g2

    def mirrored(self) -> "Trajectory":
        """The sign-mapped trajectory (f, g) -> (-f, -g), same radii."""
        segs = [(r0, h, -f0, -g0, tuple(-q for q in qf), tuple(-q for q in qg))
                for (r0, h, f0, g0, qf, qg) in self._segments] or None
        series = (-self._series[0], -self._series[1]) if self._series else None
        return Trajectory(self.r.copy(), -self.f, -self.g, self.params, -self.x0,
                          self.termination, segs, series, self.config)


def series_start(x0: float, params: ModelParams, r_start: float) -> PhasePoint:
    """Second-order Taylor state of the regular radial solution at r_start."""
    if r_start <= 0.0:
        raise ValueError("series handoff radius must be positive")
    c1 = x0 * (params.b - params.a * x0 * x0) / 3.0      # f'(0)
    f = c1 * r_start
    g = x0 + 0.5 * c1 * (1.0 - x0 * x0) * r_start * r_start
    return PhasePoint(f, g, r_start)


def _series_coeffs(x0: float, params: ModelParams) -> tuple[float, float]:
    c1 = x0 * (params.b - params.a * x0 * x0) / 3.0
    return c1, 0.5 * c1 * (1.0 - x0 * x0)


def _bisect_root(fun, lo: float, hi: float, vlo: float, xtol: float) -> float:
    """First root of fun in [lo, hi] given sign(fun(lo)) = sign(vlo) != sign at hi."""
    neg = vlo < 0.0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        vm = fun(mid)
        if (vm < 0.0) == neg and vm != 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def _run_dopri(deriv, r0: float, f0: float, g0: float, r_end: float,
               cfg: IntegratorConfig, event_fns, blowup_threshold: float):
    """Core stepper.  Returns (rs, fs, gs, segments, termination).

    deriv(r, f, g) -> (df, dg); event_fns is a list of
    (key, direction, value_fn, r_floor) tuples evaluated on accepted steps.
    """
    rtol, atol = cfg.rtol, cfg.atol
    h_max = cfg.h_max
    h = min(cfg.h_init, h_max, (r_end - r0))
    if h <= 0.0:
        raise ValueError("empty integration span")

    rs = [r0]
    fs = [f0]
    gs = [g0]
    segments = []

    r, f, g = r0, f0, g0
    kf1, kg1 = deriv(r, f, g)
    prev_vals = {}
    for key, direction, vfn, r_floor in event_fns:
        prev_vals[key] = vfn(r, f, g) if r > r_floor else None

    err_prev = 1e-4
    n_reject = 0
    terminated = None

    for _ in range(_MAX_STEPS):
        if r_end - r <= 1e-12 * max(1.0, r_end):
            terminated = Termination(TerminationKind.REACHED_RMAX, r)
            break
        if h < 1e-13 * max(1.0, abs(r)):
            raise StiffnessError(r)
        h = min(h, h_max, r_end - r)

        # -- seven stages (FSAL: stage 7 becomes stage 1 of the next step)
        kf2, kg2 = deriv(r + _C2 * h, f + h * (_A21 * kf1), g + h * (_A21 * kg1))
        kf3, kg3 = deriv(r + _C3 * h,
                         f + h * (_A31 * kf1 + _A32 * kf2),
                         g + h * (_A31 * kg1 + _A32 * kg2))
        kf4, kg4 = deriv(r + _C4 * h,
                         f + h * (_A41 * kf1 + _A42 * kf2 + _A43 * kf3),
                         g + h * (_A41 * kg1 + _A42 * kg2 + _A43 * kg3))
        kf5, kg5 = deriv(r + _C5 * h,
                         f + h * (_A51 * kf1 + _A52 * kf2 + _A53 * kf3 + _A54 * kf4),
                         g + h * (_A51 * kg1 + _A52 * kg2 + _A53 * kg3 + _A54 * kg4))
        kf6, kg6 = deriv(r + h,
                         f + h * (_A61 * kf1 + _A62 * kf2 + _A63 * kf3 + _A64 * kf4 + _A65 * kf5),
                         g + h * (_A61 * kg1 + _A62 * kg2 + _A63 * kg3 + _A64 * kg4 + _A65 * kg5))
        f5 = f + h * (_B1 * kf1 + _B3 * kf3 + _B4 * kf4 + _B5 * kf5 + _B6 * kf6)
        g5 = g + h * (_B1 * kg1 + _B3 * kg3 + _B4 * kg4 + _B5 * kg5 + _B6 * kg6)
        r1 = r + h
        kf7, kg7 = deriv(r1, f5, g5)

        err_f = h * (_E1 * kf1 + _E3 * kf3 + _E4 * kf4 + _E5 * kf5 + _E6 * kf6 + _E7 * kf7)
        err_g = h * (_E1 * kg1 + _E3 * kg3 + _E4 * kg4 + _E5 * kg5 + _E6 * kg6 + _E7 * kg7)

        bad = not (math.isfinite(f5) and math.isfinite(g5)
                   and math.isfinite(err_f) and math.isfinite(err_g))
        if bad:
            h *= 0.25
            n_reject += 1
            if n_reject > 60:
                raise StiffnessError(r, "repeated nonfinite steps")
            continue

        sc_f = atol + rtol * max(abs(f), abs(f5))
        sc_g = atol + rtol * max(abs(g), abs(g5))
        # products, not **2: a hopeless trial step must saturate to inf
        # (and get rejected) rather than raise OverflowError
        q_f = err_f / sc_f
        q_g = err_g / sc_g
        err = math.sqrt(0.5 * (q_f * q_f + q_g * q_g))

        if err > 1.0:
            h *= max(0.1, _SAFETY * err ** (-0.2))
            n_reject += 1
            if n_reject > 100:
                raise StiffnessError(r, "persistent step rejection")
            continue
        n_reject = 0

        # dense-output polynomial for this step
        ks_f = (kf1, kf2, kf3, kf4, kf5, kf6, kf7)
        ks_g = (kg1, kg2, kg3, kg4, kg5, kg6, kg7)
        qf = tuple(sum(ks_f[s] * _P[s][j] for s in range(7)) for j in range(4))
        qg = tuple(sum(ks_g[s] * _P[s][j] for s in range(7)) for j in range(4))
        seg = (r, h, f, g, qf, qg)

        # -- event scan on the accepted step
        candidates = []

        def dense_state(rv, _seg=seg):
            return _segment_eval(_seg, rv)

        for key, direction, vfn, r_floor in event_fns:
            lo = r
            v_lo = prev_vals[key]
            if r_floor > 0.0 and lo <= r_floor:
                if r1 <= r_floor:
                    continue
                lo = r_floor
                flo, glo = dense_state(lo)
                v_lo = vfn(lo, flo, glo)
            v_hi = vfn(r1, f5, g5)
            prev_vals[key] = v_hi
            if v_lo is None:
                continue
            # probe interior points so a double crossing inside one step
            # is not missed; steps are short relative to the dynamics
            probes = [lo + 0.25 * (r1 - lo), lo + 0.5 * (r1 - lo), lo + 0.75 * (r1 - lo)]
            xs = [lo] + probes + [r1]
            vs = [v_lo]
            for rp in probes:
                fp, gp = dense_state(rp)
                vs.append(vfn(rp, fp, gp))
            vs.append(v_hi)
            for i in range(len(xs) - 1):
                va, vb = vs[i], vs[i + 1]
                if va == 0.0:
                    continue
                rising = va < 0.0 <= vb
                falling = va > 0.0 >= vb
                if (rising and direction >= 0) or (falling and direction <= 0):
                    def ev(rv, _vfn=vfn):
                        fv, gv = dense_state(rv)
                        return _vfn(rv, fv, gv)
                    r_loc = _bisect_root(ev, xs[i], xs[i + 1], va, _EVENT_DR)
                    candidates.append((r_loc, key))
                    break

        size1 = abs(f5) + abs(g5)
        if size1 > blowup_threshold:
            def ev_blow(rv):
                fv, gv = dense_state(rv)
                return abs(fv) + abs(gv) - blowup_threshold
            v0 = abs(f) + abs(g) - blowup_threshold
            if v0 < 0.0:
                r_loc = _bisect_root(ev_blow, r, r1, v0, _EVENT_DR)
            else:
                r_loc = r
            candidates.append((r_loc, "blowup"))

        if candidates:
            candidates.sort(key=lambda c: c[0])
            r_stop = candidates[0][0]
            tied = [k for (rv, k) in candidates if rv - r_stop <= _TIE_DR]
            f_stop, g_stop = dense_state(r_stop)
            segments.append(seg)
            rs.append(r_stop)
            fs.append(f_stop)
            gs.append(g_stop)
            ev_kinds = tuple(k[1] for k in tied if k != "blowup")
            if ev_kinds:
                terminated = Termination(TerminationKind.EVENT, r_stop, ev_kinds)
            else:
                terminated = Termination(TerminationKind.BLOWUP, r_stop)
            break

        # -- accept
        segments.append(seg)
        rs.append(r1)
        fs.append(f5)
        gs.append(g5)
        r, f, g = r1, f5, g5
        kf1, kg1 = kf7, kg7

        if err == 0.0:
            fac = _FAC_MAX
        else:
            fac = _SAFETY * err ** (-_PI_ALPHA) * err_prev ** _PI_BETA
            fac = min(_FAC_MAX, max(_FAC_MIN, fac))
        h *= fac
        err_prev = max(err, 1e-10)
    else:
        raise StiffnessError(r, "step budget exhausted")

    if terminated is None:
        terminated = Termination(TerminationKind.REACHED_RMAX, r)
    return rs, fs, gs, segments, terminated


def _decay_value(spec: EventSpec):
    eps = spec.eps_decay

    def val(r, f, g):
        return abs(f) + abs(g) - eps

    return val


def _event_functions(events, params: ModelParams, radial_deriv):
    fns = []
    for i, spec in enumerate(events):
        key = (i, spec.kind)
        if spec.kind is EventKind.F_CROSSES_ZERO:
            fns.append((key, spec.direction, lambda r, f, g: f, 0.0))
        elif spec.kind is EventKind.G_CROSSES_ZERO:
            fns.append((key, spec.direction, lambda r, f, g: g, 0.0))
        elif spec.kind is EventKind.G_SQUARED_REACHES_ONE:
            fns.append((key, spec.direction, lambda r, f, g: g * g - 1.0, 0.0))
        elif spec.kind is EventKind.DECAY_DETECTED:
            fns.append((key, -1, _decay_value(spec), spec.r_min))
        elif spec.kind is EventKind.F_PRIME_CROSSES_ZERO:
            fns.append((key, spec.direction,
                        lambda r, f, g: radial_deriv(r, f, g)[0], 0.0))
    return fns


def integrate_radial(x0: float, params: ModelParams,
                     config: IntegratorConfig | None = None,
                     events=()) -> Trajectory:
    """Solve the singular radial system from g(0) = x0, f(0) = 0.

    Runs until r_max, blowup, or the first triggered event; simultaneous
    events localized within 1e-12 of each other are reported together
    (the flow cannot vanish two components at once away from the origin,
    so a tie flags numerical ambiguity, not physics).
    """
    cfg = config or DEFAULT_CONFIG
    a, b = params.a, params.b

    def deriv(r, f, g):
        return (-(2.0 / r) * f + g * (f * f - a * g * g + b),
                f * (1.0 - g * g))

    c1, d2 = _series_coeffs(x0, params)
    p1 = series_start(x0, params, cfg.r_start)

    raw_events = _event_functions(events, params, deriv)
    rs, fs, gs, segs, term = _run_dopri(deriv, cfg.r_start, p1.f, p1.g,
                                        cfg.r_max, cfg, raw_events,
                                        cfg.blowup_threshold)
    rs = [0.0] + rs
    fs = [0.0] + fs
    gs = [x0] + gs
    return Trajectory(rs, fs, gs, params, x0, term, segs, (c1, d2), cfg)


def integrate_conservative(p0: PhasePoint, params: ModelParams,
                           config: IntegratorConfig | None = None) -> Trajectory:
    """Solve the autonomous companion system from an arbitrary point."""
    cfg = config or DEFAULT_CONFIG
    a, b = params.a, params.b

    def deriv(r, f, g):
        return (g * (f * f - a * g * g + b), f * (1.0 - g * g))

    rs, fs, gs, segs, term = _run_dopri(deriv, 0.0, p0.f, p0.g, cfg.r_max,
                                        cfg, [], cfg.blowup_threshold)
    return Trajectory(rs, fs, gs, params, p0.g, term, segs, None, cfg)


def integrate_shifted(p0: PhasePoint, rho: float, params: ModelParams,
                      config: IntegratorConfig | None = None) -> Trajectory:
    """Solve the friction-shifted system f' + 2/(rho + r) f = ... from r = 0.

    The shift removes the singularity, so arbitrary initial f is allowed;
    as rho grows the flow approaches the companion system uniformly on
    bounded spans.
    """
    if rho <= 0.0:
        raise ValueError("shift rho must be positive")
    cfg = config or DEFAULT_CONFIG
    a, b = params.a, params.b

    def deriv(r, f, g):
        return (-(2.0 / (rho + r)) * f + g * (f * f - a * g * g + b),
                f * (1.0 - g * g))

    rs, fs, gs, segs, term = _run_dopri(deriv, 0.0, p0.f, p0.g, cfg.r_max,
                                        cfg, [], cfg.blowup_threshold)
    return Trajectory(rs, fs, gs, params, p0.g, term, segs, None, cfg)
