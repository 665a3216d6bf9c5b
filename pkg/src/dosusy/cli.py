"""Command-line front end.

Subcommands
-----------
eval      evaluate a closed-form quantity at a point
quantize  quantized coupling with a shooting cross-check
partners  superpotential and partner potentials (point or CSV curves)
family    one-parameter solution families (point or CSV curve)
audit     printed-series audit records (JSON or CSV)
critical  pocket-threshold point of the upper partner
figures   emit figure curve data as CSV files
trace     classical zero-energy orbit as CSV plus closure summary
verify    run verification suites, emit a canonical JSON report

Exit codes: 0 success, 1 verification/computation failure, 2 usage error.
Reports and curve files are deterministic: same inputs, same bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import checks, model, solver, susy
from . import family as fam
from .exceptions import SingularPointError
from .numkit import DEFAULT_PROFILE, ToleranceProfile

__all__ = ["main", "build_parser", "figure_payloads"]


# ----------------------------------------------------------------------
# shared flag groups
# ----------------------------------------------------------------------

def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-quad", type=float, default=DEFAULT_PROFILE.quad_tol,
                   help="relative quadrature tolerance (default %(default)g)")
    p.add_argument("--tol-deriv-step", type=float, default=DEFAULT_PROFILE.deriv_step,
                   help="base finite-difference step (default %(default)g)")
    p.add_argument("--tol-root", type=float, default=DEFAULT_PROFILE.root_tol,
                   help="root-finding residual tolerance (default %(default)g)")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-min", type=float, default=1e-3,
                   help="smallest radius of the evaluation grid (default %(default)g)")
    p.add_argument("--grid-max", type=float, default=1e3,
                   help="largest radius of the evaluation grid (default %(default)g)")
    p.add_argument("--grid-points", type=int, default=400,
                   help="number of log-spaced grid points (default %(default)s)")


def _profile_of(args) -> ToleranceProfile:
    return ToleranceProfile(quad_tol=args.tol_quad,
                            deriv_step=args.tol_deriv_step,
                            root_tol=args.tol_root)


def _grid_of(args) -> np.ndarray:
    return model.default_grid(args.grid_min, args.grid_max, args.grid_points)


# ----------------------------------------------------------------------
# CSV emission (locale-independent, '#'-commented headers)
# ----------------------------------------------------------------------

def _curve_csv(title: str, column_doc: str, param_doc: str,
               header: str, rows) -> str:
    lines = [f"# {title}", f"# columns: {column_doc}"]
    if param_doc:
        lines.append(f"# parameters: {param_doc}")
    lines.append(header)
    for row in rows:
        lines.append(",".join(repr(float(v)) if isinstance(v, (float, np.floating))
                              else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _write_text(path: str, payload: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)


def figure_payloads(figure: str) -> dict[str, str]:
    """CSV payloads for the two published-curve bundles, keyed by filename.

    fig1: both partner potentials at l = 2 for kappa in {1/2, 1, 3/2};
    fig2: kappa = 1, lower partner at l in {1, 5, 10} and upper partner at
    l in {6, 7, 8} (straddling the pocket threshold).  Pure function of the
    figure name — identical bytes on every call.
    """
    grid = model.default_grid()
    if figure == "fig1":
        combos = ((0.5, 2), (1.0, 2), (1.5, 2))
        layout = (("fig1_minus.csv", "lower partner potential U_minus(rho)",
                   susy.partner_minus_closed, combos),
                  ("fig1_plus.csv", "upper partner potential U_plus(rho)",
                   susy.partner_plus_closed, combos))
    elif figure == "fig2":
        layout = (("fig2_minus.csv", "lower partner potential U_minus(rho)",
                   susy.partner_minus_closed, ((1.0, 1), (1.0, 5), (1.0, 10))),
                  ("fig2_plus.csv", "upper partner potential U_plus(rho)",
                   susy.partner_plus_closed, ((1.0, 6), (1.0, 7), (1.0, 8))))
    else:
        raise ValueError(f"unknown figure {figure!r} (expected 'fig1' or 'fig2')")

    payloads: dict[str, str] = {}
    for fname, desc, fn, combos in layout:
        rows = []
        for kappa, l in combos:
            vals = fn(grid, kappa, l)
            rows.extend((r, v, kappa, l) for r, v in zip(grid, vals))
        curves = "; ".join(f"kappa={kappa!r}, l={l}" for kappa, l in combos)
        payloads[fname] = _curve_csv(
            f"{fname[:-4]}: {desc} on the default log grid",
            "rho (units R), U (units E0), kappa, l",
            curves, "rho,U,kappa,l", rows)
    return payloads


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

_EVAL_CHOICES = ("W", "dW", "Uminus", "Uplus", "U", "Ueff", "f", "u", "xi", "alpha")


def _cmd_eval(args) -> int:
    kappa, _ = model.parse_kappa(args.kappa)
    q = args.quantity
    if q == "W":
        val = susy.superpotential(args.rho, kappa, args.l)
    elif q == "dW":
        val = susy.superpotential_dr(args.rho, kappa, args.l)
    elif q == "Uminus":
        val = susy.partner_minus_closed(args.rho, kappa, args.l)
    elif q == "Uplus":
        val = susy.partner_plus_closed(args.rho, kappa, args.l)
    elif q == "U":
        if args.w is None:
            raise ValueError("eval U needs --w")
        val = model.potential(args.rho, args.w, kappa)
    elif q == "Ueff":
        if args.w is None:
            raise ValueError("eval Ueff needs --w")
        val = model.effective_potential_general(args.rho, args.w, kappa, args.l)
    elif q == "f":
        val = model.f_factor(args.rho, kappa, args.l)
    elif q == "u":
        if args.N is None:
            raise ValueError("eval u needs --N")
        val = model.radial_u(args.rho, args.N, args.l, args.kappa,
                             normalized=args.normalized, profile=_profile_of(args))
    elif q == "xi":
        val = model.map_coordinates(args.rho, kappa)[0]
    else:  # alpha
        val = model.map_coordinates(args.rho, kappa)[1]
    print(repr(float(val)))
    return 0


def _cmd_quantize(args) -> int:
    kappa, _ = model.parse_kappa(args.kappa)
    w = model.coupling_quantized(args.N, kappa)
    print(repr(w))
    res = solver.shoot_coupling(args.N, args.kappa, args.l, profile=_profile_of(args))
    rel = abs(res.w_star - w) / w
    ok = rel < 1e-6
    print(f"shooting cross-check: w_star = {res.w_star!r} "
          f"(relative deviation {rel:.3e}, {res.defect_evaluations} defect "
          f"evaluations) [{'ok' if ok else 'FAIL'}]")
    return 0 if ok else 1


def _cmd_partners(args) -> int:
    kappa, _ = model.parse_kappa(args.kappa)
    if args.rho is not None:
        print(f"W       = {susy.superpotential(args.rho, kappa, args.l)!r}")
        print(f"U_minus = {susy.partner_minus_closed(args.rho, kappa, args.l)!r}")
        print(f"U_plus  = {susy.partner_plus_closed(args.rho, kappa, args.l)!r}")
        return 0
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    grid = _grid_of(args)
    parts = (("partners_w.csv", "superpotential W(rho)", susy.superpotential),
             ("partners_minus.csv", "lower partner U_minus(rho)", susy.partner_minus_closed),
             ("partners_plus.csv", "upper partner U_plus(rho)", susy.partner_plus_closed))
    for fname, desc, fn in parts:
        vals = fn(grid, kappa, args.l)
        payload = _curve_csv(f"{fname[:-4]}: {desc}",
                             "rho (units R), value (units E0; W in 1/R), kappa, l",
                             f"kappa={args.kappa}, l={args.l}",
                             "rho,value,kappa,l",
                             ((r, v, kappa, args.l) for r, v in zip(grid, vals)))
        path = os.path.join(outdir, fname)
        _write_text(path, payload)
        print(path)
    return 0


def _cmd_family(args) -> int:
    kappa, _ = model.parse_kappa(args.kappa)
    profile = _profile_of(args)
    if args.rho is not None:
        v = fam.v_family(args.rho, kappa, args.l, args.lam, args.side, profile)
        print(f"V        = {v!r}")
        try:
            wl = fam.family_superpotential(args.rho, kappa, args.l, args.lam,
                                           args.side, profile)
            print(f"W_lambda = {wl!r}")
        except SingularPointError as exc:
            print(f"W_lambda = singular ({exc})")
        return 0
    grid = _grid_of(args)
    vals = fam.family_on_grid(kappa, args.l, args.lam, args.side, grid, profile)
    zeros = fam.v_zeros(kappa, args.l, args.lam, args.side, grid, profile)
    payload = _curve_csv(
        "family_v: one-parameter solution family coefficient V_lambda(rho)",
        "rho (units R), value, kappa, l",
        f"kappa={args.kappa}, l={args.l}, lambda={args.lam}, side={args.side}",
        "rho,value,kappa,l",
        ((r, v, kappa, args.l) for r, v in zip(grid, vals)))
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, "family_v.csv")
    _write_text(path, payload)
    print(path)
    if zeros:
        print("singular loci of W_lambda (zeros of V): "
              + ", ".join(repr(z) for z in zeros))
    return 0


def _cmd_audit(args) -> int:
    records = fam.series_audit(profile=_profile_of(args))
    if args.format == "json":
        payload = json.dumps([r.to_dict() for r in records],
                             indent=2, sort_keys=True) + "\n"
    else:
        rows = [(f"{r.formula_id},{r.l},{r.kappa!r},{r.max_dev!r},"
                 f"{'' if r.ode_residual_max is None else repr(r.ode_residual_max)},"
                 f"{r.ratio!r},{r.verdict}") for r in records]
        payload = "\n".join([
            "# printed-series audit: printed formulas vs quadrature oracles",
            "# columns: formula_id, l, kappa, max_dev, ode_residual_max, ratio, verdict",
            "formula_id,l,kappa,max_dev,ode_residual_max,ratio,verdict",
            *rows]) + "\n"
    if args.out:
        _write_text(args.out, payload)
        print(args.out)
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_critical(args) -> int:
    kappa, _ = model.parse_kappa(args.kappa)
    profile = _profile_of(args)
    points = (solver.critical_angular_all(kappa, profile) if args.all
              else [solver.critical_angular(kappa, profile)])
    if args.all and not points:
        print("no pocket threshold in the scan window (l in (1, 20), rho in (0.1, 10))")
        return 1
    for cp in points:
        print(f"l_cr  = {cp.l_cr!r}")
        print(f"rho_cr = {cp.rho_cr!r}")
        print(f"slope_residual = {cp.slope_residual:.3e}, "
              f"curvature_residual = {cp.curvature_residual:.3e}, "
              f"newton_iterations = {cp.newton_iterations}")
    return 0


def _cmd_figures(args) -> int:
    names = ("fig1", "fig2") if args.figure == "all" else (args.figure,)
    os.makedirs(args.out, exist_ok=True)
    for name in names:
        for fname, payload in figure_payloads(name).items():
            path = os.path.join(args.out, fname)
            _write_text(path, payload)
            print(path)
    return 0


def _cmd_trace(args) -> int:
    traj = solver.classical_trajectory(args.kappa, w=args.w, rho0=args.rho,
                                       direction_deg=args.direction,
                                       samples=args.samples,
                                       revolutions=args.revolutions)
    speed = np.hypot(traj.vx, traj.vy)
    print(f"kappa = {traj.k1}/{traj.k2}, w = {traj.w!r}, rho0 = {args.rho!r}, "
          f"direction = {args.direction!r} deg")
    print(f"closure_defect = {traj.closure_defect:.3e} after "
          f"{args.revolutions if args.revolutions is not None else traj.k2} revolution(s), "
          f"closure_time = {traj.closure_time!r}")
    print(f"focal_point = ({traj.focal_point[0]!r}, {traj.focal_point[1]!r}) "
          f"at t = {traj.focal_time!r}")
    print(f"energy_drift = {traj.energy_drift:.3e} (relative to |U(start)|)")
    if args.out:
        payload = _curve_csv(
            "trace: classical zero-energy orbit",
            "t (scaled time), x (units R), y (units R), speed",
            f"kappa={args.kappa}, w={args.w}, rho0={args.rho}, "
            f"direction_deg={args.direction}",
            "t,x,y,speed",
            zip(traj.t, traj.x, traj.y, speed))
        _write_text(args.out, payload)
        print(args.out)
    return 0


def _cmd_verify(args) -> int:
    names = []
    for item in args.suite:
        names.extend(s.strip() for s in item.split(",") if s.strip())
    results = checks.run_suites(names or ("all",), _profile_of(args))
    payload = checks.report_json(results)
    if args.out:
        _write_text(args.out, payload)
    else:
        sys.stdout.write(payload)
    code = checks.exit_code(results)
    gating = [r for r in results if not r.informative]
    failed = [r for r in gating if not r.passed]
    print(f"{len(gating) - len(failed)}/{len(gating)} gating checks passed, "
          f"{sum(1 for r in results if r.informative)} informative entries"
          + (f"; FAILED: {', '.join(r.check_id for r in failed)}" if failed else ""),
          file=sys.stderr)
    return code


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dosusy",
        description=("Zero-energy focusing potentials, their supersymmetric "
                     "partners, one-parameter solution families, and the "
                     "numerical verification suite."))
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("eval", help="evaluate a closed-form quantity at a point")
    p.add_argument("quantity", choices=_EVAL_CHOICES)
    p.add_argument("--kappa", required=True,
                   help="shape exponent, decimal or rational 'k1/k2'")
    p.add_argument("--l", type=int, default=0, help="orbital number (default 0)")
    p.add_argument("--N", type=int, default=None, help="ladder label (for u)")
    p.add_argument("--w", type=float, default=None, help="coupling (for U, Ueff)")
    p.add_argument("--rho", type=float, required=True, help="radius in units of R")
    p.add_argument("--normalized", action="store_true",
                   help="unit-norm scaling for u (l >= 1 only)")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("quantize",
                       help="quantized coupling with a shooting cross-check")
    p.add_argument("--kappa", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--l", type=int, default=0,
                   help="orbital number for the cross-check (default 0)")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_quantize)

    p = sub.add_parser("partners",
                       help="superpotential and partner potentials")
    p.add_argument("--kappa", required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--rho", type=float, default=None,
                   help="evaluate at one radius instead of emitting CSV curves")
    p.add_argument("--out", default=None, help="output directory (default '.')")
    _add_grid_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_partners)

    p = sub.add_parser("family", help="one-parameter solution families")
    p.add_argument("--kappa", required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0,
                   help="family parameter (default 0)")
    p.add_argument("--side", choices=("bosonic", "fermionic"), default="bosonic")
    p.add_argument("--rho", type=float, default=None,
                   help="evaluate at one radius instead of emitting a CSV curve")
    p.add_argument("--out", default=None, help="output directory (default '.')")
    _add_grid_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("audit", help="printed-series audit records")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("critical",
                       help="pocket-threshold point of the upper partner")
    p.add_argument("--kappa", required=True)
    p.add_argument("--all", action="store_true",
                   help="report every threshold in the scan window")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("figures", help="emit figure curve data as CSV")
    p.add_argument("figure", choices=("fig1", "fig2", "all"))
    p.add_argument("--out", default=".", help="output directory (default '.')")
    p.set_defaults(func=_cmd_figures)

    p = sub.add_parser("trace", help="classical zero-energy orbit")
    p.add_argument("--kappa", required=True,
                   help="rational shape exponent 'k1/k2' (closure span needs it)")
    p.add_argument("--w", type=float, required=True, help="coupling strength")
    p.add_argument("--rho", type=float, required=True, help="start radius")
    p.add_argument("--direction", type=float, default=90.0,
                   help="launch angle vs the radius vector, degrees (default 90)")
    p.add_argument("--samples", type=int, default=1000,
                   help="number of output samples (default 1000)")
    p.add_argument("--revolutions", type=float, default=None,
                   help="traced span in revolutions (default: the closure span k2)")
    p.add_argument("--out", default=None, help="CSV output file (default: none)")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", default=[],
                   help="suite name or comma list (default all); known: "
                        + ", ".join(checks.SUITE_NAMES))
    p.add_argument("--out", default=None, help="report file (default stdout)")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # Bad parameter combinations (invalid states, unknown suites, ...)
        print(f"dosusy: error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        # Computation failures: quadrature, convergence, orbit geometry.
        print(f"dosusy: failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dosusy: filesystem error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
