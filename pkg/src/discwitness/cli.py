"""Command-line front end.

Subcommands: profile, moments, asymptotics, inscribed, identities,
residuals, optimize, report.  Angles are taken in degrees on the command
line and converted to radians internally.  Output files are written
atomically (temp file + rename); floats are emitted with 17 significant
digits so round-trips are bit-faithful.

Exit codes: 0 success; 1 numerical failure (quadrature non-convergence);
2 validation error (malformed spec, non-convex shape, bad arguments).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile

from . import characterize, shapeopt
from .asymptotics import asymptotic_ratio
from .errors import (
    DiscWitnessError,
    MalformedSpec,
    NoFeasibleStart,
    NotStrictlyConvex,
    OrderTooLarge,
    QuadratureNoConvergence,
)
from .geometry import build_curve, chord_chart
from .moments import moment_sweep

VALIDATION_ERRORS = (MalformedSpec, NotStrictlyConvex, NoFeasibleStart)
NUMERICAL_ERRORS = (QuadratureNoConvergence, OrderTooLarge)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".discwitness-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        _atomic_write(path, text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_curve(args):
    try:
        with open(args.shape) as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise MalformedSpec(f"cannot read shape file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"shape file is not valid JSON: {exc}") from exc
    return build_curve(spec)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DISCWITNESS_THREADS", "1")))
    except ValueError:
        return 1


def _profile_dict(report):
    out = {
        "verdict": report.verdict,
        "max_dev": report.max_dev,
        "tol": report.tol,
    }
    if report.fitted_circle is not None:
        (cx, cy), r = report.fitted_circle
        out["fitted_circle"] = {"center": [cx, cy], "radius": r}
    return out


def cmd_profile(args):
    curve = _load_curve(args)
    report = characterize.kl_profile(curve, args.samples, args.tol)
    if args.format == "csv":
        _emit(args.out, _csv(report.samples, ["s", "theta", "kappa", "L", "kappaL"]))
    else:
        _emit(args.out, _json(_profile_dict(report)))
    return 0


def cmd_moments(args):
    curve = _load_curve(args)
    frame = math.radians(args.frame_deg)
    n_list = args.n_list or list(range(args.n_max + 1))
    rows = []
    for method in args.methods.split(","):
        for r in moment_sweep(curve, n_list, frame, method.strip(),
                              workers=_workers()):
            lc = r.as_logcomplex()
            val = lc.value()
            rows.append((r.n, args.frame_deg, r.method, val.real, val.imag,
                         r.log_scale, abs(val)))
    rows.sort(key=lambda row: (row[0], row[2]))
    _emit(args.out, _csv(rows, ["n", "frame_deg", "method", "re", "im",
                                "log_scale", "abs"]))
    return 0


def cmd_asymptotics(args):
    curve = _load_curve(args)
    frame = math.radians(args.frame_deg)
    m_list = [int(v) for v in args.m_list.split(",")]
    rows = asymptotic_ratio(curve, frame, m_list)
    _emit(args.out, _csv(
        [(r.m, r.ratio_f_abs_err, r.ratio_g_abs_err, r.combined_abs_err)
         for r in rows],
        ["m", "ratio_f_abs_err", "ratio_g_abs_err", "combined_abs_err"]))
    return 0


def cmd_inscribed(args):
    curve = _load_curve(args)
    (cx, cy), r = characterize.inscribed_disc(curve)
    _emit(args.out, _json({"center": [cx, cy], "radius": r}))
    return 0


def cmd_identities(args):
    curve = _load_curve(args)
    ident = characterize.identity_residuals(curve, args.samples)
    pz = characterize.p_zero_check(curve)
    _emit(args.out, _json({
        "step": ident.step,
        "max_res_gap": ident.max_res_gap,
        "max_res_width": ident.max_res_width,
        "total_L_prime": pz.total_L_prime,
        "total_curvature": pz.total_curvature,
        "implied_p": pz.implied_p,
        "p_zero_consistent": pz.p_zero_consistent,
    }))
    return 0


def cmd_residuals(args):
    curve = _load_curve(args)
    res = characterize.constraint_residuals(
        chord_chart(curve, math.radians(args.frame_deg)))
    _emit(args.out, _json({
        "height": res.r_height,
        "curv": res.r_curv,
        "phase": res.r_phase,
        "p": res.p_nearest,
    }))
    return 0


def cmd_optimize(args):
    curve = _load_curve(args)
    spec = curve.to_spec()
    if spec["type"] != "support_fourier":
        raise MalformedSpec("optimize requires a support_fourier shape")
    k = max(shapeopt.DEFAULT_K, len(spec["cos"]), len(spec["sin"]))
    start = shapeopt.ShapeVector(spec["a0"], spec["cos"], spec["sin"], K=k)
    opts = shapeopt.OptOptions(max_iter=args.max_iter, seed=args.seed)
    result = shapeopt.minimize(start, args.objective, opts)
    if args.trace_out:
        rows = []
        for i, j in enumerate(result.trace):
            rows.append((i, j, None, None))
        final = result
        rows[-1] = (len(result.trace) - 1, final.objective,
                    final.circle_distance, final.min_rho)
        _emit(args.trace_out, _csv(rows, ["iter", "J", "circle_distance",
                                          "min_rho"]))
    _emit(args.out, _json(result.best.decode().to_spec()))
    return 0


def cmd_report(args):
    curve = _load_curve(args)
    profile = characterize.kl_profile(curve, args.samples, args.tol)
    res = characterize.constraint_residuals(
        chord_chart(curve, math.radians(args.frame_deg)))
    (cx, cy), r = characterize.inscribed_disc(curve)
    ident = characterize.identity_residuals(curve, args.samples)
    witness = characterize.lemma2_witness(curve)
    out = _profile_dict(profile)
    out["residuals"] = {"height": res.r_height, "curv": res.r_curv,
                        "phase": res.r_phase, "p": res.p_nearest}
    out["inscribed"] = {"center": [cx, cy], "radius": r}
    out["identities"] = {"max_res_gap": ident.max_res_gap,
                         "max_res_width": ident.max_res_width}
    if witness is not None:
        out["witness"] = {
            "K_center": list(witness.K_center),
            "K_radius": witness.K_radius,
            "x_prime_theta": witness.x_prime.theta,
            "rho": witness.rho,
            "L_dir": witness.L_dir,
            "inequality_report": witness.inequality_report,
        }
    _emit(args.out, _json(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discwitness",
        description="Moment, asymptotic, and disc-characterization analyses "
                    "of strictly convex plane shapes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=64):
        p.add_argument("--shape", required=True, help="shape spec JSON file")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="json")
        p.add_argument("--frame-deg", type=float, default=0.0)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("profile", help="kappa*L profile and disc verdict")
    common(p, samples=1000)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("moments", help="moment sweep, CSV")
    common(p)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--n-list", type=lambda s: [int(v) for v in s.split(",")],
                   default=None)
    p.add_argument("--methods", default="chord,green,area")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("asymptotics", help="Laplace ratio table, CSV")
    common(p)
    p.add_argument("--m-list", default="50,100,200")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("inscribed", help="maximal inscribed disc")
    common(p)
    p.set_defaults(func=cmd_inscribed)

    p = sub.add_parser("identities", help="differential identity residuals")
    common(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("residuals", help="chart constraint residuals")
    common(p)
    p.set_defaults(func=cmd_residuals)

    p = sub.add_parser("optimize", help="drive the shape toward a disc")
    common(p)
    p.add_argument("--objective", choices=["kl", "bracket"], default="kl")
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--trace-out", default=None, help="objective trace CSV")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("report", help="combined JSON report")
    common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.exit(2, "tol must be positive\n")
    if getattr(args, "samples", 16) < 16:
        parser.exit(2, "samples must be >= 16\n")
    try:
        return args.func(args)
    except VALIDATION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NUMERICAL_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except DiscWitnessError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
