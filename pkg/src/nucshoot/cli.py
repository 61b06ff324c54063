"""Command-line front end.

Subcommands: ground-state, classify, portrait, sweep, verify.  All
artifacts are deterministic for fixed flags and seed; exit codes are
0 success, 1 check failure, 2 parameter-regime rejection, 3 numerical
failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .integrator import (DEFAULT_CONFIG, IntegratorConfig, StiffnessError,
                         integrate_conservative, integrate_radial,
                         integrate_shifted)
from .model import (ModelParams, PhasePoint, Regime, classify_regime,
                    critical_points, exact_coth)
from .physics import (DEFAULT_SCALES, InsufficientHorizonError,
                      plateau_metrics, profile_table)
from .portrait import (admissible_contains, admissible_region,
                       energy_sign_grid, level_curves, zero_contour)
from .serialize import SCHEMA_VERSION, csv_text, json_text, svg_plot, write_text
from .shooting import (BracketFailureError, NotDecayingError,
                       PrecisionExhaustedError, ShotClass, bisect_ground_state,
                       classify_shot, _dissipation_residual)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_REGIME = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

_DEFAULT_SEED = 20240901

_NUMERICAL_ERRORS = (BracketFailureError, PrecisionExhaustedError,
                     NotDecayingError, StiffnessError)


class _Parser(argparse.ArgumentParser):
    """argparse front end whose usage failures exit with code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: flags over config file over defaults."""

    command: str
    a: float | None
    b: float | None
    x: float | None
    rtol: float
    atol: float
    r_max: float
    x_tol: float
    out_dir: Path
    formats: tuple[str, ...]
    levels: tuple[float, ...]
    resolution: int
    a_grid: tuple[float, ...]
    b_grid: tuple[float, ...]
    seed: int
    jobs: int | None
    quick: bool
    corrupt_tolerances: bool

    def integrator(self) -> IntegratorConfig:
        return replace(DEFAULT_CONFIG, rtol=self.rtol, atol=self.atol,
                       r_max=self.r_max)

    def params(self) -> ModelParams:
        return ModelParams(self.a, self.b)

    def resolved(self) -> dict:
        return {
            "command": self.command,
            "a": self.a, "b": self.b, "x": self.x,
            "rtol": self.rtol, "atol": self.atol, "r_max": self.r_max,
            "x_tol": self.x_tol,
            "out_dir": str(self.out_dir),
            "formats": list(self.formats),
            "levels": list(self.levels),
            "resolution": self.resolution,
            "a_grid": list(self.a_grid), "b_grid": list(self.b_grid),
            "seed": self.seed,
            "jobs": self.jobs,
            "quick": self.quick,
        }


_CONFIG_KEYS = {"a", "b", "x", "rtol", "atol", "r_max", "x_tol", "out",
                "formats", "levels", "resolution", "a_grid", "b_grid",
                "seed", "jobs", "quick"}


def _read_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        parser.error(f"cannot read config file {path!r}: {exc}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            parser.error(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            parser.error(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = val.strip()
    return values


def _floats_csv(text: str, parser, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        parser.error(f"invalid {what}: {text!r}")


def _resolve(args, parser) -> RunConfig:
    file_vals = _read_config_file(args.config, parser) if args.config else {}

    def pick(name, cast, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_vals:
            try:
                return cast(file_vals[name])
            except ValueError:
                parser.error(f"config key {name!r}: cannot parse "
                             f"{file_vals[name]!r}")
        return default

    formats = pick("formats", str, "csv,json,svg")
    if isinstance(formats, str):
        formats = tuple(tok.strip() for tok in formats.split(",") if tok.strip())
    for fmt in formats:
        if fmt not in ("csv", "json", "svg"):
            parser.error(f"unknown output format {fmt!r}")
    levels = pick("levels", str, "0")
    if isinstance(levels, str):
        levels = _floats_csv(levels, parser, "levels")
    a_grid = pick("a_grid", str, "")
    if isinstance(a_grid, str):
        a_grid = _floats_csv(a_grid, parser, "a_grid")
    b_grid = pick("b_grid", str, "")
    if isinstance(b_grid, str):
        b_grid = _floats_csv(b_grid, parser, "b_grid")

    rtol = pick("rtol", float, DEFAULT_CONFIG.rtol)
    atol = pick("atol", float, DEFAULT_CONFIG.atol)
    r_max = pick("r_max", float, DEFAULT_CONFIG.r_max)
    x_tol = pick("x_tol", float, 1e-12)
    if not (rtol > 0 and atol > 0 and r_max > 0 and x_tol > 0):
        parser.error("tolerances and r_max must be positive")
    resolution = pick("resolution", int, 200)
    if resolution < 2:
        parser.error("resolution must be at least 2")
    out_dir = Path(pick("out", str, "."))

    cfg = RunConfig(
        command=args.command,
        a=pick("a", float, None),
        b=pick("b", float, None),
        x=pick("x", float, None),
        rtol=float(rtol), atol=float(atol), r_max=float(r_max),
        x_tol=float(x_tol),
        out_dir=out_dir,
        formats=tuple(formats),
        levels=tuple(levels),
        resolution=int(resolution),
        a_grid=tuple(a_grid), b_grid=tuple(b_grid),
        seed=int(pick("seed", int, _DEFAULT_SEED)),
        jobs=getattr(args, "jobs", None),
        quick=bool(getattr(args, "quick", False) or
                   (str(file_vals.get("quick", "")).lower() == "true")),
        corrupt_tolerances=bool(getattr(args, "corrupt_tolerances", False)),
    )
    try:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        parser.error(f"output directory {cfg.out_dir} is not writable: {exc}")
    return cfg


def _require_params(cfg: RunConfig, parser) -> ModelParams:
    if cfg.a is None or cfg.b is None:
        parser.error("--a and --b are required")
    try:
        return ModelParams(cfg.a, cfg.b)
    except ValueError as exc:
        parser.error(str(exc))


def build_parser() -> _Parser:
    parser = _Parser(prog="nucshoot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(p, needs_ab=True):
        if needs_ab:
            p.add_argument("--a", type=float, default=None)
            p.add_argument("--b", type=float, default=None)
        p.add_argument("--config", type=str, default=None,
                       help="key=value file; flags override it")
        p.add_argument("--out", dest="out", type=str, default=None)
        p.add_argument("--rtol", type=float, default=None)
        p.add_argument("--atol", type=float, default=None)
        p.add_argument("--r-max", dest="r_max", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)

    p_gs = sub.add_parser("ground-state", help="bisect x* and audit the trajectory")
    common(p_gs)
    p_gs.add_argument("--x-tol", dest="x_tol", type=float, default=None)

    p_cl = sub.add_parser("classify", help="classify a single shot")
    common(p_cl)
    p_cl.add_argument("--x", type=float, default=None)

    p_po = sub.add_parser("portrait", help="level sets, critical points, trajectories")
    common(p_po)
    p_po.add_argument("--levels", type=str, default=None,
                      help="comma-separated energy levels (default 0)")
    p_po.add_argument("--resolution", type=int, default=None)
    p_po.add_argument("--formats", type=str, default=None,
                      help="subset of csv,svg (json ignored here)")

    p_sw = sub.add_parser("sweep", help="parameter sweep over an (a, b) grid")
    common(p_sw, needs_ab=False)
    p_sw.add_argument("--a-grid", dest="a_grid", type=str, default=None)
    p_sw.add_argument("--b-grid", dest="b_grid", type=str, default=None)
    p_sw.add_argument("--jobs", type=int, default=None)
    p_sw.add_argument("--x-tol", dest="x_tol", type=float, default=None)

    p_ve = sub.add_parser("verify", help="run the cross-module check suite")
    common(p_ve, needs_ab=False)
    p_ve.add_argument("--quick", action="store_true", default=False)
    p_ve.add_argument("--corrupt-tolerances", dest="corrupt_tolerances",
                      action="store_true", default=False,
                      help=argparse.SUPPRESS)

    return parser


# ---------------------------------------------------------------- ground-state

def _lemma_report_payload(report) -> list[dict]:
    return [
        {"name": c.name, "passed": bool(c.passed), "value": c.value,
         "threshold": c.threshold, "note": c.note}
        for c in report.checks
    ]


def cmd_ground_state(cfg: RunConfig, parser) -> int:
    params = _require_params(cfg, parser)
    if classify_regime(params) is not Regime.SUPERCRITICAL:
        print(f"no decaying ground state exists for a = {params.a:g}, "
              f"b = {params.b:g}: the existence theory requires a - 2b > 0 "
              f"(here a - 2b = {params.a - 2 * params.b:g})", file=sys.stderr)
        return EXIT_REGIME
    try:
        gs = bisect_ground_state(params, cfg.integrator(), x_tol=cfg.x_tol)
    except _NUMERICAL_ERRORS as exc:
        print(f"ground-state search failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    payload = {
        "schema": SCHEMA_VERSION,
        "config": cfg.resolved(),
        "x_star": gs.x_star,
        "bracket": [gs.bracket[0], gs.bracket[1]],
        "decay_rate": gs.decay_rate,
        "decay_C": gs.decay_C,
        "lemma_report": _lemma_report_payload(gs.lemma_report),
        "all_checks_passed": bool(gs.lemma_report.passed),
        "regime": classify_regime(params).value,
    }
    write_text(cfg.out_dir / "ground_state.json", json_text(payload))
    table = profile_table(gs.trajectory, DEFAULT_SCALES, params)
    write_text(cfg.out_dir / "trajectory.csv", csv_text(table))
    for check in gs.lemma_report.checks:
        status = "pass" if check.passed else "FAIL"
        print(f"{check.name}: {status}")
    print(f"x_star = {gs.x_star!r}  bracket width = "
          f"{gs.bracket[1] - gs.bracket[0]:.3e}  decay rate = {gs.decay_rate:.6f}")
    return EXIT_OK if gs.lemma_report.passed else EXIT_CHECK_FAILED


# -------------------------------------------------------------------- classify

def cmd_classify(cfg: RunConfig, parser) -> int:
    params = _require_params(cfg, parser)
    if cfg.x is None:
        parser.error("--x is required")
    try:
        out = classify_shot(cfg.x, params, cfg.integrator())
    except StiffnessError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    term = out.trajectory.termination
    payload = {
        "schema": SCHEMA_VERSION,
        "config": cfg.resolved(),
        "x0": out.x0,
        "shot_class": out.shot_class.value,
        "r_x": out.r_x,
        "g_at_rx": out.g_at_rx,
        "H_at_rx": out.H_at_rx,
        "termination": term.describe(),
        "r_end": out.trajectory.r_end,
    }
    sys.stdout.write(json_text(payload))
    return EXIT_OK


# -------------------------------------------------------------------- portrait

def _portrait_rows(curves) -> dict:
    level_col, branch_col, f_col, g_col = [], [], [], []
    for curve in curves:
        for fv, gv in curve.samples:
            level_col.append(curve.level)
            branch_col.append(curve.branch.value)
            f_col.append(fv)
            g_col.append(gv)
    return {"level": level_col, "branch": branch_col, "f": f_col, "g": g_col}


def cmd_portrait(cfg: RunConfig, parser) -> int:
    params = _require_params(cfg, parser)
    regime = classify_regime(params)
    curves = []
    for level in cfg.levels:
        if level == 0.0 and regime is Regime.CRITICAL:
            curves.extend(zero_contour(params, resolution=cfg.resolution))
        else:
            curves.extend(level_curves(params, [level],
                                       resolution=cfg.resolution))
    crits = critical_points(params)
    supercritical = regime is Regime.SUPERCRITICAL

    rng = np.random.default_rng(cfg.seed)
    f_corner = math.sqrt(max(params.a - params.b, 0.25))
    starts = []
    while len(starts) < 4:
        f0 = rng.uniform(-f_corner, f_corner)
        g0 = rng.uniform(-1.0, 1.0)
        if not supercritical or admissible_contains(PhasePoint(f0, g0), params):
            starts.append(PhasePoint(f0, g0))
    config = replace(cfg.integrator(), r_max=20.0)
    trajectories = [integrate_conservative(p0, params, config) for p0 in starts]

    if "csv" in cfg.formats:
        write_text(cfg.out_dir / "portrait_curves.csv",
                   csv_text(_portrait_rows(curves)))
        write_text(cfg.out_dir / "portrait_critical.csv", csv_text({
            "f": [cp.location.f for cp in crits],
            "g": [cp.location.g for cp in crits],
            "kind": [cp.kind.value for cp in crits],
        }))
        if supercritical:
            boundary = admissible_region(params, resolution=cfg.resolution)
            write_text(cfg.out_dir / "portrait_admissible.csv", csv_text({
                "f": boundary.boundary[:, 0], "g": boundary.boundary[:, 1],
            }))
        tcols = {"trajectory": [], "r": [], "f": [], "g": []}
        for i, traj in enumerate(trajectories):
            tcols["trajectory"].extend([float(i)] * len(traj.r))
            tcols["r"].extend(traj.r.tolist())
            tcols["f"].extend(traj.f.tolist())
            tcols["g"].extend(traj.g.tolist())
        write_text(cfg.out_dir / "portrait_trajectories.csv", csv_text(tcols))

    if "svg" in cfg.formats:
        f_hi = max([1.5 * f_corner] +
                   [float(np.max(np.abs(c.samples[:, 0]))) for c in curves
                    if len(c.samples)])
        xlim = (-1.05 * f_hi, 1.05 * f_hi)
        ylim = (-1.6, 1.6)
        fs, gs, hgrid = energy_sign_grid(params, xlim, ylim, n=64)
        rects = []
        df = fs[1] - fs[0]
        dg = gs[1] - gs[0]
        # meshgrid 'xy' layout: hgrid[j, i] pairs gs[j] with fs[i]
        for i, fv in enumerate(fs):
            for j, gv in enumerate(gs):
                if hgrid[j, i] < 0:
                    rects.append((fv - df / 2, gv - dg / 2,
                                  fv + df / 2, gv + dg / 2, "#e8e8e8"))
        polylines = [(c.samples.tolist(), "black", 1.5, "") for c in curves]
        for traj in trajectories:
            polylines.append((np.column_stack([traj.f, traj.g]).tolist(),
                              "#2a7f2a", 1.0, ""))
        if supercritical:
            boundary = admissible_region(params, resolution=cfg.resolution)
            polylines.append((boundary.boundary.tolist(), "#c03030", 1.5, "6,3"))
        pts = [(cp.location.f, cp.location.g, 3.5, "#1030c0") for cp in crits]
        svg = svg_plot(xlim, ylim, polylines, rects=rects, points=pts,
                       title=f"phase portrait a={params.a:g} b={params.b:g}")
        write_text(cfg.out_dir / "portrait.svg", svg)
    return EXIT_OK


# ----------------------------------------------------------------------- sweep

def _sweep_row(task: tuple) -> dict:
    a, b, rtol, atol, r_max, x_tol = task
    params = ModelParams(a, b)
    if classify_regime(params) is not Regime.SUPERCRITICAL:
        return {"a": a, "b": b, "status": "nonexistence"}
    config = replace(DEFAULT_CONFIG, rtol=rtol, atol=atol, r_max=r_max)
    try:
        gs = bisect_ground_state(params, config, x_tol=x_tol)
    except _NUMERICAL_ERRORS as exc:
        return {"a": a, "b": b, "status": f"error:{type(exc).__name__}"}
    try:
        score = plateau_metrics(gs.trajectory).plateau_score
    except InsufficientHorizonError:
        score = float("nan")
    checks = gs.lemma_report.checks
    rate = sum(1 for c in checks if c.passed) / len(checks)
    return {"a": a, "b": b, "status": "ok", "x_star": gs.x_star,
            "decay_rate": gs.decay_rate, "plateau_score": score,
            "lemma_pass_rate": rate}


def cmd_sweep(cfg: RunConfig, parser) -> int:
    if not cfg.a_grid or not cfg.b_grid:
        parser.error("--a-grid and --b-grid must be nonempty")
    pairs = sorted((a, b) for a in cfg.a_grid for b in cfg.b_grid)
    tasks = [(a, b, cfg.rtol, cfg.atol, cfg.r_max, cfg.x_tol)
             for a, b in pairs]
    jobs = cfg.jobs
    if jobs is None:
        env = os.environ.get("NUCSHOOT_JOBS", "")
        jobs = int(env) if env.isdigit() and int(env) > 0 else None
    if jobs is None:
        jobs = getattr(os, "process_cpu_count", os.cpu_count)() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]
    cols = {"a": [], "b": [], "status": [], "x_star": [], "decay_rate": [],
            "plateau_score": [], "lemma_pass_rate": []}
    for row in rows:
        cols["a"].append(row["a"])
        cols["b"].append(row["b"])
        cols["status"].append(row["status"])
        for key in ("x_star", "decay_rate", "plateau_score", "lemma_pass_rate"):
            cols[key].append(row[key] if key in row else "")
    write_text(cfg.out_dir / "sweep.csv", csv_text(cols))
    n_ok = sum(1 for r in rows if r["status"] == "ok")
    print(f"sweep: {len(rows)} rows, {n_ok} solved")
    return EXIT_OK


# ---------------------------------------------------------------------- verify

def _eval_on(traj, grid) -> tuple[np.ndarray, np.ndarray]:
    pairs = [traj.sample_at(float(r)) for r in grid]
    arr = np.asarray(pairs)
    return arr[:, 0], arr[:, 1]


def _check_coth(cfg: RunConfig) -> tuple[float, float]:
    params = ModelParams(2.5, 1.0)
    config = replace(cfg.integrator(), r_max=10.0)
    traj = integrate_radial(1.0, params, config)
    grid = np.linspace(config.r_start, 10.0, 2001)
    fs, gs = _eval_on(traj, grid)
    exact = [exact_coth(float(r), params) for r in grid]
    fe = np.asarray([p.f for p in exact])
    ge = np.asarray([p.g for p in exact])
    err = float(max(np.max(np.abs(fs - fe)), np.max(np.abs(gs - ge))))
    return err, 1e-6


def _check_drift(cfg: RunConfig) -> tuple[float, float]:
    params = ModelParams(9.0, 4.0)
    rng = np.random.default_rng(cfg.seed)
    config = replace(cfg.integrator(), r_max=50.0)
    f_corner = math.sqrt(params.a - params.b)
    worst = 0.0
    n = 0
    while n < 20:
        p0 = PhasePoint(rng.uniform(-f_corner, f_corner), rng.uniform(-1, 1))
        if not admissible_contains(p0, params):
            continue
        n += 1
        traj = integrate_conservative(p0, params, config)
        h0 = traj.H[0]
        drift = float(np.max(np.abs(traj.H - h0)) / (1.0 + abs(h0)))
        worst = max(worst, drift)
    return worst, 1e-8


def _check_dissipation(cfg: RunConfig) -> tuple[float, float]:
    params = ModelParams(9.0, 4.0)
    rng = np.random.default_rng(cfg.seed + 1)
    config = replace(cfg.integrator(), r_max=20.0)
    worst = 0.0
    for _ in range(20):
        x0 = rng.uniform(0.05, 0.95)
        traj = integrate_radial(x0, params, config)
        worst = max(worst, _dissipation_residual(traj))
    return worst, 1e-4


def _check_nonexistence(cfg: RunConfig) -> tuple[float, float]:
    decayed = 0
    for a, b in ((4.0, 4.0), (1.0, 4.0), (3.0, 2.0)):
        params = ModelParams(a, b)
        config = replace(cfg.integrator(), r_max=200.0)
        for x in np.linspace(0.0, 1.0, 52)[1:-1]:
            out = classify_shot(float(x), params, config)
            if out.shot_class is ShotClass.DECAYED:
                decayed += 1
    return float(decayed), 0.0


def _check_shifted(cfg: RunConfig) -> tuple[float, float]:
    params = ModelParams(9.0, 4.0)
    p0 = PhasePoint(0.3, 0.5)
    config = replace(cfg.integrator(), r_max=5.0)
    ref = integrate_conservative(p0, params, config)
    grid = np.linspace(0.0, 5.0, 501)
    rf, rg = _eval_on(ref, grid)
    dists = []
    for rho in (10.0, 100.0, 1000.0):
        sh = integrate_shifted(p0, rho, params, config)
        sf, sg = _eval_on(sh, grid)
        dists.append(float(max(np.max(np.abs(sf - rf)), np.max(np.abs(sg - rg)))))
    monotone = dists[0] > dists[1] > dists[2]
    value = dists[2] if monotone else float("inf")
    return value, 1e-2


def _check_ground_state(cfg: RunConfig) -> tuple[float, float]:
    params = ModelParams(9.0, 4.0)
    gs = bisect_ground_state(params, cfg.integrator(), x_tol=cfg.x_tol)
    lo, hi = gs.bracket
    ok = (gs.lemma_report.passed
          and hi - lo <= 1e-10
          and math.sqrt(8.0 / 9.0) < lo < hi < 1.0)
    return (hi - lo) if ok else float("inf"), 1e-10


_VERIFY_CHECKS = [
    ("coth_oracle", _check_coth, True),
    ("conservative_energy_drift", _check_drift, True),
    ("dissipation_identity", _check_dissipation, True),
    ("nonexistence_grids", _check_nonexistence, False),
    ("shifted_convergence", _check_shifted, True),
    ("ground_state_9_4_audit", _check_ground_state, True),
]


def cmd_verify(cfg: RunConfig, parser) -> int:
    results = []
    for name, fn, in_quick in _VERIFY_CHECKS:
        if cfg.quick and not in_quick:
            continue
        value, threshold = fn(cfg)
        if cfg.corrupt_tolerances:
            # hidden test hook: shrink every tolerance below attainability
            threshold = threshold * 1e-8 - 1e-300
        passed = value <= threshold
        results.append({"name": name, "passed": bool(passed),
                        "value": value, "threshold": threshold})
        print(f"{name}: {'pass' if passed else 'FAIL'} "
              f"(value {value:.3e}, threshold {threshold:.3e})")
    all_passed = all(r["passed"] for r in results)
    payload = {
        "schema": SCHEMA_VERSION,
        "config": cfg.resolved(),
        "quick": cfg.quick,
        "checks": results,
        "all_passed": all_passed,
    }
    write_text(cfg.out_dir / "verify_report.json", json_text(payload))
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


# ------------------------------------------------------------------------ main

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _resolve(args, parser)
    if args.command == "ground-state":
        return cmd_ground_state(cfg, parser)
    if args.command == "classify":
        return cmd_classify(cfg, parser)
    if args.command == "portrait":
        return cmd_portrait(cfg, parser)
    if args.command == "sweep":
        return cmd_sweep(cfg, parser)
    if args.command == "verify":
        return cmd_verify(cfg, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
