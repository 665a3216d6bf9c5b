"""Verification suite: every closed form in the library measured against an
independent numerical route, reported in one canonical machine-readable
shape.

Each check is a CheckResult with a stable id, the parameters it ran at, a
single measured number, the threshold it is held to, and the outcome.  A
handful of entries are informative: they document measurements (the
printed-series audit verdicts) without gating the exit code.

Checks are grouped into named suites; `run_suites` executes a selection and
returns results sorted by check id, so a report built from the same inputs
is byte-identical across runs — nothing here depends on wall time, paths,
or random state.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import family as fam
from . import model, solver, susy
from .numkit import DEFAULT_PROFILE, ToleranceProfile, derivative, integrate_adaptive

__all__ = [
    "CheckResult",
    "SUITE_NAMES",
    "run_suites",
    "exit_code",
    "report_json",
]


@dataclass(frozen=True)
class CheckResult:
    """One verified statement: id, inputs, one number, one threshold."""

    check_id: str
    params: dict
    measured: float
    threshold: float | None
    passed: bool
    informative: bool = False

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": _jsonable(self.params),
            "measured": _jsonable(self.measured),
            "threshold": _jsonable(self.threshold),
            "pass": bool(self.passed),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def _fmt_kappa(kappa: float) -> str:
    frac = Fraction(kappa).limit_denominator(64)
    if abs(float(frac) - kappa) > 1e-12:
        return repr(kappa)
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


_GRID = model.default_grid()


# ----------------------------------------------------------------------
# riccati: closed-form partners versus the superpotential combinations
# ----------------------------------------------------------------------

def suite_riccati(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    for kappa in (0.5, 1.0, 1.5):
        for side in ("minus", "plus"):
            worst, worst_l, worst_rho = -1.0, -1, 0.0
            for l in range(11):
                w = susy.superpotential(_GRID, kappa, l)
                w1 = susy.superpotential_dr(_GRID, kappa, l)
                if side == "minus":
                    closed = susy.partner_minus_closed(_GRID, kappa, l)
                    combo = w * w - w1
                else:
                    closed = susy.partner_plus_closed(_GRID, kappa, l)
                    combo = w * w + w1
                # Scale by the term magnitudes: near the origin W^2 and W'
                # separately reach ~1/rho^2 while their combination nearly
                # cancels, and a naive pointwise ratio would measure only
                # that floating-point cancellation, not the identity.
                scale = w * w + np.abs(w1) + np.abs(closed) + 1e-300
                rel = np.abs(combo - closed) / scale
                i = int(np.argmax(rel))
                if rel[i] > worst:
                    worst, worst_l, worst_rho = float(rel[i]), l, float(_GRID[i])
            results.append(CheckResult(
                check_id=f"riccati:{side}:kappa={_fmt_kappa(kappa)}",
                params={"suite": "riccati", "kappa": _fmt_kappa(kappa), "side": side,
                        "l_values": "0..10", "grid_points": len(_GRID),
                        "worst_l": worst_l, "worst_rho": worst_rho,
                        "scaling": "sum of term magnitudes"},
                measured=worst, threshold=1e-10, passed=worst < 1e-10))
    return results


# ----------------------------------------------------------------------
# partner: ladder-bottom identity and the compact-coordinate route to f
# ----------------------------------------------------------------------

def suite_partner(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    for kappa, ls in ((0.5, tuple(range(11))),
                      (1.0, tuple(range(11))),
                      (1.5, (0, 3, 6, 9))):
        worst, worst_l, worst_rho = -1.0, -1, 0.0
        for l in ls:
            N = 1 + int(round(l / kappa))
            wq = model.coupling_quantized(N, kappa)
            ueff = model.effective_potential_general(_GRID, wq, kappa, l)
            uminus = susy.partner_minus_closed(_GRID, kappa, l)
            cent = l * (l + 1.0) / _GRID ** 2
            scale = np.abs(cent) + np.abs(ueff - cent) + 1e-300
            rel = np.abs(uminus - ueff) / scale
            i = int(np.argmax(rel))
            if rel[i] > worst:
                worst, worst_l, worst_rho = float(rel[i]), l, float(_GRID[i])
        results.append(CheckResult(
            check_id=f"partner:ladder-bottom:kappa={_fmt_kappa(kappa)}",
            params={"suite": "partner", "kappa": _fmt_kappa(kappa),
                    "l_values": list(ls), "N_rule": "N = 1 + l/kappa",
                    "worst_l": worst_l, "worst_rho": worst_rho},
            measured=worst, threshold=1e-12, passed=worst < 1e-12))

    grid = np.geomspace(0.05, 20.0, 48)
    for kappa, l in ((1.0, 0), (0.5, 1), (1.5, 2)):
        recon = susy.natanzon_f_reconstruction(grid, kappa, l, profile)
        ratio = recon / model.f_factor(grid, kappa, l)
        med = float(np.median(ratio))
        spread = float(np.max(np.abs(ratio / med - 1.0)))
        results.append(CheckResult(
            check_id=f"partner:factor-reconstruction:kappa={_fmt_kappa(kappa)}:l={l}",
            params={"suite": "partner", "kappa": _fmt_kappa(kappa), "l": l,
                    "grid": "48 log points on [0.05, 20]",
                    "median_ratio": med},
            measured=spread, threshold=1e-8, passed=spread < 1e-8))
    return results


# ----------------------------------------------------------------------
# eigenvalue: shooting oracle versus the quantized-coupling ladder
# ----------------------------------------------------------------------

_EIGEN_STATES: tuple[tuple[float, int, int], ...] = (
    (1.0, 1, 0), (1.0, 2, 0), (1.0, 2, 1), (1.0, 3, 0), (1.0, 3, 1), (1.0, 3, 2),
    (0.5, 1, 0), (0.5, 2, 0), (0.5, 3, 0), (0.5, 3, 1),
    (1.5, 1, 0), (1.5, 2, 0), (1.5, 3, 0), (1.5, 3, 3),
)


def suite_eigenvalue(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    for kappa, N, l in _EIGEN_STATES:
        res = solver.shoot_coupling(N, kappa, l, profile=profile)
        w_formula = model.coupling_quantized(N, kappa)
        measured = abs(res.w_star - w_formula) / w_formula
        results.append(CheckResult(
            check_id=f"eigenvalue:kappa={_fmt_kappa(kappa)}:N={N}:l={l}",
            params={"suite": "eigenvalue", "kappa": _fmt_kappa(kappa), "N": N, "l": l,
                    "w_star": res.w_star, "w_formula": w_formula,
                    "match_defect": res.match_defect,
                    "defect_evaluations": res.defect_evaluations,
                    "bracket": list(res.bracket)},
            measured=measured, threshold=1e-6, passed=measured < 1e-6))
    return results


# ----------------------------------------------------------------------
# wavefunction: analytic u against the half-line operator, and node counts
# ----------------------------------------------------------------------

_WF_STATES: tuple[tuple[float, int, int], ...] = (
    (1.0, 1, 0), (1.0, 2, 0), (1.0, 2, 1), (1.0, 3, 0), (1.0, 3, 1), (1.0, 3, 2),
    (0.5, 3, 1), (1.5, 2, 0),
)


def suite_wavefunction(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    radii = np.geomspace(0.1, 10.0, 25)
    # Second differences divide rounding noise by h^2, so the optimal step
    # is much coarser than for first derivatives; 1e-3 balances the two
    # error sources near machine precision for these smooth profiles.
    d2_profile = ToleranceProfile(quad_tol=profile.quad_tol,
                                  deriv_step=max(1e-3, profile.deriv_step),
                                  root_tol=profile.root_tol)
    for kappa, N, l in _WF_STATES:
        wq = model.coupling_quantized(N, kappa)
        u = model.radial_u(radii, N, l, kappa)
        upp = np.array([
            derivative(lambda r: model.radial_u(r, N, l, kappa), float(x),
                       order=2, profile=d2_profile)
            for x in radii])
        ueff = model.effective_potential_general(radii, wq, kappa, l)
        resid = -upp + ueff * u
        scale = float(np.max(np.abs(upp) + np.abs(ueff * u)))
        measured = float(np.max(np.abs(resid))) / scale
        results.append(CheckResult(
            check_id=f"wavefunction:residual:kappa={_fmt_kappa(kappa)}:N={N}:l={l}",
            params={"suite": "wavefunction", "kappa": _fmt_kappa(kappa), "N": N, "l": l,
                    "radii": "25 log points on [0.1, 10]",
                    "scaling": "sup of term magnitudes"},
            measured=measured, threshold=1e-7, passed=measured < 1e-7))

        state = model.make_state(N, l, kappa)
        sf = model.SampledFunction(_GRID, model.radial_u(_GRID, N, l, kappa))
        nodes = sf.node_count()
        dev = float(abs(nodes - state.n_r))
        results.append(CheckResult(
            check_id=f"wavefunction:nodes:kappa={_fmt_kappa(kappa)}:N={N}:l={l}",
            params={"suite": "wavefunction", "kappa": _fmt_kappa(kappa), "N": N, "l": l,
                    "node_count": nodes, "expected_n_r": state.n_r},
            measured=dev, threshold=0.5, passed=dev < 0.5))
    return results


# ----------------------------------------------------------------------
# critical: pocket-threshold location and the l=6 / l=7 regime split
# ----------------------------------------------------------------------

def suite_critical(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    cp = solver.critical_angular(1.0, profile)
    loc = max(abs(cp.l_cr - 6.876), abs(cp.rho_cr - 1.599))
    results.append(CheckResult(
        check_id="critical:location:kappa=1",
        params={"suite": "critical", "kappa": "1",
                "l_cr": cp.l_cr, "rho_cr": cp.rho_cr,
                "reference": [6.876, 1.599],
                "newton_iterations": cp.newton_iterations},
        measured=loc, threshold=0.005, passed=loc < 0.005))
    res = max(cp.slope_residual, cp.curvature_residual)
    results.append(CheckResult(
        check_id="critical:residuals:kappa=1",
        params={"suite": "critical", "kappa": "1",
                "slope_residual": cp.slope_residual,
                "curvature_residual": cp.curvature_residual},
        measured=res, threshold=1e-8, passed=res < 1e-8))

    rho = np.geomspace(0.5, 5.0, 2001)
    for l, expected in ((7, 2), (6, 0)):
        upl = susy.partner_plus_closed(rho, 1.0, l)
        s = np.sign(np.diff(upl))
        s = s[s != 0]
        changes = int(np.sum(s[:-1] != s[1:]))
        dev = float(abs(changes - expected))
        results.append(CheckResult(
            check_id=f"critical:pocket:l={l}",
            params={"suite": "critical", "kappa": "1", "l": l,
                    "slope_sign_changes": changes, "expected": expected,
                    "window": "rho in (0.5, 5)"},
            measured=dev, threshold=0.5, passed=dev < 0.5))
    return results


# ----------------------------------------------------------------------
# family: defining first-order equation, shared-partner identity, shifts
# ----------------------------------------------------------------------

_LAMBDAS = (-2.0, -0.5, 0.0, 0.5, 2.0)


def _family_integrand(kappa: float, l: int, side: str):
    if side == "bosonic":
        return lambda r: 1.0 / model.f_factor(r, kappa, l) ** 2
    return lambda r: model.f_factor(r, kappa, l) ** 2


def _family_v(r: float, lam: float, integral: float, kappa: float, l: int, side: str) -> float:
    f2 = model.f_factor(r, kappa, l) ** 2
    if side == "bosonic":
        return -f2 * (lam + integral)
    return (lam + integral) / f2


def suite_family(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    # The quadrature noise gets divided by the finite-difference step below,
    # so the anchored integrals are computed an order tighter than usual.
    tight = ToleranceProfile(quad_tol=1e-13, deriv_step=profile.deriv_step,
                             root_tol=profile.root_tol)
    radii = (0.2, 0.35, 0.6, 0.9, 1.4, 2.2, 3.5)
    for kappa in (1.0, 0.5):
        for l in (0, 1, 2):
            for side in ("bosonic", "fermionic"):
                g = _family_integrand(kappa, l, side)
                worst, worst_r, worst_lam = -1.0, 0.0, 0.0
                for r in radii:
                    h = 1e-3 * r
                    nodes = (r - 2 * h, r - h, r, r + h, r + 2 * h)
                    ints = [integrate_adaptive(g, 1.0, x, tight) for x in nodes]
                    for lam in _LAMBDAS:
                        vs = [_family_v(x, lam, I, kappa, l, side)
                              for x, I in zip(nodes, ints)]
                        d = (8.0 * (vs[3] - vs[1]) - (vs[4] - vs[0])) / (12.0 * h)
                        w = susy.superpotential(r, kappa, l)
                        if side == "bosonic":
                            raw = d + 2.0 * w * vs[2] + 1.0
                        else:
                            raw = d - 2.0 * w * vs[2] - 1.0
                        rel = abs(raw) / (1.0 + abs(d) + abs(2.0 * w * vs[2]))
                        if rel > worst:
                            worst, worst_r, worst_lam = rel, r, lam
                results.append(CheckResult(
                    check_id=f"family:ode:kappa={_fmt_kappa(kappa)}:l={l}:side={side}",
                    params={"suite": "family", "kappa": _fmt_kappa(kappa), "l": l,
                            "side": side, "lambdas": list(_LAMBDAS),
                            "derivative": "5-point differences of the quadrature V",
                            "worst_rho": worst_r, "worst_lambda": worst_lam},
                    measured=worst, threshold=1e-8, passed=worst < 1e-8))

    # Shared lower partner across the bosonic-fixed family.
    pts = np.geomspace(0.12, 8.0, 21)
    for kappa in (1.0, 0.5):
        for l in (0, 1, 2):
            g = _family_integrand(kappa, l, "bosonic")
            worst, kept, skipped = -1.0, 0, 0
            for lam in _LAMBDAS:
                for r in pts:
                    r = float(r)
                    integral = integrate_adaptive(g, 1.0, r, tight)
                    f2 = model.f_factor(r, kappa, l) ** 2
                    v = -f2 * (lam + integral)
                    if abs(v) < 1e-6 * (f2 * (abs(lam) + abs(integral)) + 1e-300):
                        skipped += 1  # adjacent to a zero of V: W_lambda singular
                        continue
                    kept += 1
                    w = susy.superpotential(r, kappa, l)
                    w1 = susy.superpotential_dr(r, kappa, l)
                    vp = -1.0 - 2.0 * w * v
                    wl = w + 1.0 / v
                    wlp = w1 - vp / (v * v)
                    um = susy.partner_minus_closed(r, kappa, l)
                    raw = wl * wl - wlp - um
                    rel = abs(raw) / (wl * wl + abs(wlp) + abs(um) + 1.0)
                    worst = max(worst, rel)
            results.append(CheckResult(
                check_id=f"family:partner-identity:kappa={_fmt_kappa(kappa)}:l={l}",
                params={"suite": "family", "kappa": _fmt_kappa(kappa), "l": l,
                        "side": "bosonic", "lambdas": list(_LAMBDAS),
                        "points_kept": kept, "points_skipped_near_zero": skipped},
                measured=worst, threshold=1e-7, passed=worst < 1e-7))

    # Parameter shifts move V by an exact multiple of f^2 (or f^-2).
    for kappa, l, side in ((1.0, 1, "bosonic"), (0.5, 1, "fermionic")):
        worst = -1.0
        for r in (0.3, 1.0, 2.5):
            v_hi = fam.v_family(r, kappa, l, 2.0, side, profile)
            v_lo = fam.v_family(r, kappa, l, -0.5, side, profile)
            f2 = model.f_factor(r, kappa, l) ** 2
            expected = -2.5 * f2 if side == "bosonic" else 2.5 / f2
            worst = max(worst, abs((v_hi - v_lo) - expected) / abs(expected))
        results.append(CheckResult(
            check_id=f"family:lambda-shift:kappa={_fmt_kappa(kappa)}:l={l}:side={side}",
            params={"suite": "family", "kappa": _fmt_kappa(kappa), "l": l, "side": side,
                    "lambda_pair": [2.0, -0.5], "radii": [0.3, 1.0, 2.5]},
            measured=worst, threshold=1e-12, passed=worst < 1e-12))

    # Spot values of the kappa=1, l=0, lambda=0 member: V = rho(1-rho^2)/(1+rho^2).
    dev_v1 = abs(fam.v_family(1.0, 1.0, 0, 0.0, "bosonic", profile))
    results.append(CheckResult(
        check_id="family:spot:v-at-1",
        params={"suite": "family", "kappa": "1", "l": 0, "lambda": 0.0,
                "side": "bosonic", "expected": 0.0},
        measured=dev_v1, threshold=1e-12, passed=dev_v1 < 1e-12))
    dev_v2 = abs(fam.v_family(2.0, 1.0, 0, 0.0, "bosonic", profile) - (-1.2))
    results.append(CheckResult(
        check_id="family:spot:v-at-2",
        params={"suite": "family", "kappa": "1", "l": 0, "lambda": 0.0,
                "side": "bosonic", "expected": -1.2},
        measured=dev_v2, threshold=1e-10, passed=dev_v2 < 1e-10))
    wl_expected = -0.1 - 5.0 / 6.0
    dev_wl = abs(fam.family_superpotential(2.0, 1.0, 0, 0.0, "bosonic", profile)
                 - wl_expected)
    results.append(CheckResult(
        check_id="family:spot:wlambda-at-2",
        params={"suite": "family", "kappa": "1", "l": 0, "lambda": 0.0,
                "side": "bosonic", "expected": wl_expected},
        measured=dev_wl, threshold=1e-10, passed=dev_wl < 1e-10))

    zeros = fam.v_zeros(1.0, 0, 0.0, "bosonic", np.geomspace(0.2, 5.0, 301), profile)
    dev_z = abs(zeros[0] - 1.0) if len(zeros) == 1 else 1.0
    results.append(CheckResult(
        check_id="family:zeros:lambda0",
        params={"suite": "family", "kappa": "1", "l": 0, "lambda": 0.0,
                "side": "bosonic", "zeros": list(zeros), "expected": [1.0]},
        measured=dev_z, threshold=1e-6, passed=dev_z < 1e-6))
    return results


# ----------------------------------------------------------------------
# audit: printed closed-form series versus quadrature oracles
# ----------------------------------------------------------------------

def suite_audit(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    records = fam.series_audit(profile=profile)
    by_key = {(r.formula_id, r.l): r for r in records}

    s1 = by_key[("S1", 0)]
    ok = s1.verdict == "match" and s1.max_dev < 1e-10
    results.append(CheckResult(
        check_id="audit:anchor:S1:l=0",
        params={"suite": "audit", "formula_id": "S1", "l": 0,
                "verdict": s1.verdict, "required_verdict": "match"},
        measured=s1.max_dev, threshold=1e-10, passed=ok))

    v1 = by_key[("V1", 0)]
    dev2 = abs(v1.ratio - 2.0)
    ok = v1.verdict == "mismatch" and dev2 < 1e-6
    results.append(CheckResult(
        check_id="audit:anchor:V1:l=0:factor-2",
        params={"suite": "audit", "formula_id": "V1", "l": 0,
                "verdict": v1.verdict, "required_verdict": "mismatch",
                "ratio": v1.ratio, "ode_residual_max": v1.ode_residual_max},
        measured=dev2, threshold=1e-6, passed=ok))

    for r in records:
        results.append(CheckResult(
            check_id=f"audit:verdict:{r.formula_id}:l={r.l}",
            params=dict(r.to_dict(), suite="audit", informative=True),
            measured=r.max_dev, threshold=None, passed=True, informative=True))
    return results


# ----------------------------------------------------------------------
# annihilation: the lowering operator kills the nodeless member
# ----------------------------------------------------------------------

def suite_annihilation(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    grid = np.geomspace(1e-2, 1e2, 6001)
    for kappa in (0.5, 1.0, 1.5):
        for l in (0, 1, 2):
            vals = model.f_factor(grid, kappa, l)
            u = model.SampledFunction(grid, vals / np.max(np.abs(vals)))
            out = susy.apply_ladder(u, kappa, l, which="A")
            measured = float(np.max(np.abs(out.values)))
            results.append(CheckResult(
                check_id=f"annihilation:kappa={_fmt_kappa(kappa)}:l={l}",
                params={"suite": "annihilation", "kappa": _fmt_kappa(kappa), "l": l,
                        "grid": "6001 log points on [1e-2, 1e2]",
                        "normalization": "unit sup-norm"},
                measured=measured, threshold=1e-8, passed=measured < 1e-8))
    return results


# ----------------------------------------------------------------------
# closure: classical orbits close, conserve energy, and rescale with w
# ----------------------------------------------------------------------

def suite_closure(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    cases = (("1", 3.0, 1e-6), ("1/2", 2.0, 1e-5))
    for kappa, w, tol in cases:
        traj = solver.classical_trajectory(kappa, w=w, rho0=0.5, direction_deg=63.0)
        results.append(CheckResult(
            check_id=f"closure:defect:kappa={kappa}",
            params={"suite": "closure", "kappa": kappa, "w": w, "rho0": 0.5,
                    "direction_deg": 63.0, "revolutions": traj.k2,
                    "closure_time": traj.closure_time,
                    "focal_point": list(traj.focal_point)},
            measured=traj.closure_defect, threshold=tol,
            passed=traj.closure_defect < tol))
        results.append(CheckResult(
            check_id=f"closure:energy:kappa={kappa}",
            params={"suite": "closure", "kappa": kappa, "w": w, "rho0": 0.5,
                    "direction_deg": 63.0,
                    "scaling": "max |E| relative to |U(start)|"},
            measured=traj.energy_drift, threshold=1e-8,
            passed=traj.energy_drift < 1e-8))

    thetas = np.linspace(0.05, 2.0 * math.pi - 0.05, 40)
    p1, s1 = solver.trajectory_path_on_angles("1", 3.0, 0.5, thetas, 63.0)
    p4, s4 = solver.trajectory_path_on_angles("1", 12.0, 0.5, thetas, 63.0)
    dist = float(np.max(np.hypot(p1[:, 0] - p4[:, 0], p1[:, 1] - p4[:, 1])))
    results.append(CheckResult(
        check_id="closure:w-scaling:path",
        params={"suite": "closure", "kappa": "1", "w_pair": [3.0, 12.0],
                "rho0": 0.5, "direction_deg": 63.0,
                "comparison": "positions at 40 shared accumulated angles"},
        measured=dist, threshold=1e-8, passed=dist < 1e-8))
    sp = float(np.max(np.abs(s4 / s1 - 2.0)))
    results.append(CheckResult(
        check_id="closure:w-scaling:speed",
        params={"suite": "closure", "kappa": "1", "w_pair": [3.0, 12.0],
                "expected_speed_ratio": 2.0},
        measured=sp, threshold=1e-6, passed=sp < 1e-6))
    return results


# ----------------------------------------------------------------------
# degeneracy: shell sizes from exact enumeration
# ----------------------------------------------------------------------

def suite_degeneracy(profile: ToleranceProfile) -> list[CheckResult]:
    results = []
    for N in range(1, 7):
        count = len(model.enumerate_shell(N, 1))
        dev = float(abs(count - N * N))
        results.append(CheckResult(
            check_id=f"degeneracy:kappa=1:N={N}",
            params={"suite": "degeneracy", "kappa": "1", "N": N,
                    "count": count, "expected": N * N},
            measured=dev, threshold=0.5, passed=dev < 0.5))
    count = len(model.enumerate_shell(3, "1/2"))
    dev = float(abs(count - 4))
    results.append(CheckResult(
        check_id="degeneracy:kappa=1/2:N=3",
        params={"suite": "degeneracy", "kappa": "1/2", "N": 3,
                "count": count, "expected": 4,
                "note": "raw enumeration; the N^2 rule is specific to kappa=1"},
        measured=dev, threshold=0.5, passed=dev < 0.5))
    return results


# ----------------------------------------------------------------------
# figures: curve emission is reproducible and hits known spot values
# ----------------------------------------------------------------------

def _csv_rows(payload: str) -> list[list[float]]:
    rows = []
    for line in payload.splitlines():
        if not line or line.startswith("#") or line.startswith("rho"):
            continue
        rows.append([float(tok) for tok in line.split(",")])
    return rows


def suite_figures(profile: ToleranceProfile) -> list[CheckResult]:
    from .cli import figure_payloads

    results = []
    payloads = {}
    for fig in ("fig1", "fig2"):
        first = figure_payloads(fig)
        second = figure_payloads(fig)
        payloads[fig] = first
        dev = 0.0 if first == second else 1.0
        results.append(CheckResult(
            check_id=f"figures:deterministic:{fig}",
            params={"suite": "figures", "figure": fig,
                    "files": sorted(first.keys()),
                    "comparison": "two in-process builds, byte equality"},
            measured=dev, threshold=0.5, passed=dev < 0.5))

    rows = _csv_rows(payloads["fig1"]["fig1_minus.csv"])
    val = next(r[1] for r in rows if r[0] == 1.0 and r[2] == 1.0)
    dev = abs(val - (-2.75))
    results.append(CheckResult(
        check_id="figures:spot:fig1-minus:rho=1:kappa=1",
        params={"suite": "figures", "figure": "fig1", "rho": 1.0, "kappa": "1",
                "l": 2, "expected": -2.75, "value": val},
        measured=dev, threshold=1e-12, passed=dev < 1e-12))

    rows = _csv_rows(payloads["fig2"]["fig2_plus.csv"])
    for l, expected in ((7, 2), (6, 0)):
        series = [r[1] for r in rows if r[3] == l and 0.5 < r[0] < 5.0]
        s = np.sign(np.diff(np.array(series)))
        s = s[s != 0]
        changes = int(np.sum(s[:-1] != s[1:]))
        dev = float(abs(changes - expected))
        results.append(CheckResult(
            check_id=f"figures:pocket:fig2-plus:l={l}",
            params={"suite": "figures", "figure": "fig2", "l": l,
                    "slope_sign_changes": changes, "expected": expected,
                    "window": "rho in (0.5, 5)"},
            measured=dev, threshold=0.5, passed=dev < 0.5))
    return results


# ----------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------

SUITES = {
    "riccati": suite_riccati,
    "partner": suite_partner,
    "eigenvalue": suite_eigenvalue,
    "wavefunction": suite_wavefunction,
    "critical": suite_critical,
    "family": suite_family,
    "audit": suite_audit,
    "annihilation": suite_annihilation,
    "closure": suite_closure,
    "degeneracy": suite_degeneracy,
    "figures": suite_figures,
}

SUITE_NAMES = tuple(SUITES)


def run_suites(names=("all",), profile: ToleranceProfile = DEFAULT_PROFILE) -> list[CheckResult]:
    """Run the named suites (or all of them) and return sorted results."""
    if isinstance(names, str):
        names = (names,)
    if "all" in names:
        selected = list(SUITE_NAMES)
    else:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise ValueError(
                f"unknown suite(s) {unknown}; valid names: {['all', *SUITE_NAMES]}")
        selected = [n for n in SUITE_NAMES if n in names]
    results: list[CheckResult] = []
    for name in selected:
        results.extend(SUITES[name](profile))
    results.sort(key=lambda r: r.check_id)
    return results


def exit_code(results) -> int:
    """0 iff every gating (non-informative) check passed."""
    return 0 if all(r.passed or r.informative for r in results) else 1


def report_json(results) -> str:
    """Canonical JSON report: sorted checks, sorted keys, newline-terminated."""
    payload = {
        "checks": [r.to_dict() for r in results],
        "summary": {
            "total": len(results),
            "gating": sum(1 for r in results if not r.informative),
            "informative": sum(1 for r in results if r.informative),
            "failed": sum(1 for r in results if not r.passed and not r.informative),
            "exit_code": exit_code(results),
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
