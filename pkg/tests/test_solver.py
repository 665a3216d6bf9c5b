"""Independent numerical routes: shooting, pocket threshold, orbit tracing.

These tests deliberately avoid the closed forms wherever the solver itself
is the oracle: shooting brackets never consult the ladder formula for the
root (only for the bracket center), the node radius of the first excited
state is recovered from a sign change, and orbit focusing is checked through
geometry (the image of a point source sits at the reciprocal radius, and is
the same point for different launch directions).
"""

import math

import numpy as np
import pytest

from dosusy.exceptions import BracketError, ConvergenceError, GeometryError
from dosusy.model import SampledFunction, default_grid, f_factor
from dosusy.solver import (
    CriticalPoint,
    ShootingResult,
    Trajectory,
    classical_trajectory,
    classify_tail,
    critical_angular,
    critical_angular_all,
    integrate_radial,
    shoot_coupling,
    trajectory_path_on_angles,
)
from dosusy.susy import partner_plus_dr

FINE = np.geomspace(0.05, 20.0, 1501)


# ----------------------------------------------------------------------
# outward radial integration
# ----------------------------------------------------------------------

def test_integration_reproduces_nodeless_state():
    grid = np.geomspace(0.01, 10.0, 400)
    u = integrate_radial(3.0, 1.0, 0, grid)
    f = f_factor(grid, 1.0, 0)
    f = f / np.max(np.abs(f))
    assert np.max(np.abs(u.values - f)) < 1e-7


def test_integration_first_excited_node_radius():
    # At w = 15 (kappa = 1, l = 0) the solution changes sign exactly once,
    # at the unit radius.
    u = integrate_radial(15.0, 1.0, 0, FINE)
    sign = np.sign(u.values)
    flips = np.where(sign[:-1] * sign[1:] < 0)[0]
    assert len(flips) == 1
    i = flips[0]
    x0, x1 = FINE[i], FINE[i + 1]
    y0, y1 = u.values[i], u.values[i + 1]
    node = x0 - y0 * (x1 - x0) / (y1 - y0)
    assert node == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("w, l, label", [
    (3.0, 0, "decaying"),
    (10.0, 0, "non-decaying"),
    (15.0, 1, "decaying"),
    (13.0, 1, "non-decaying"),
])
def test_tail_classification(w, l, label):
    assert classify_tail(integrate_radial(w, 1.0, l, FINE), l) == label


def test_integration_overflow_guard():
    # Large l makes the dominant branch grow so fast it trips the guard
    # well inside the grid.
    with pytest.raises(ConvergenceError, match="overflow"):
        integrate_radial(7.0, 1.0, 60, np.geomspace(0.01, 1e3, 200))


def test_integration_validation():
    with pytest.raises(ValueError):
        integrate_radial(-1.0, 1.0, 0, FINE)
    with pytest.raises(ValueError):
        integrate_radial(3.0, 1.0, 0, [2.0, 1.0])


def test_classify_tail_short_grid_fallback():
    u = SampledFunction([1.0, 2.0, 1000.0], [1.0, 0.5, 0.001])
    assert classify_tail(u, 0) in ("decaying", "non-decaying")


# ----------------------------------------------------------------------
# shooting for the quantized coupling
# ----------------------------------------------------------------------

def test_shooting_ground_coupling():
    res = shoot_coupling(1, "1", 0)
    assert isinstance(res, ShootingResult)
    assert res.w_star == pytest.approx(3.0, rel=1e-8)
    assert abs(res.match_defect) < 1e-9
    assert res.defect_evaluations >= 3
    assert res.bracket == (3.0 / 1.3, 3.0 * 1.3)
    assert res.u.node_count() == 0
    assert len(res.u) == len(default_grid())


@pytest.mark.parametrize("N, kappa, l, w_expected, nodes", [
    (3, "1", 0, 35.0, 2),
    (2, "1/2", 0, 6.0, 1),
    (2, "3/2", 0, 28.0, 1),
])
def test_shooting_recovers_ladder(N, kappa, l, w_expected, nodes):
    res = shoot_coupling(N, kappa, l)
    assert res.w_star == pytest.approx(w_expected, rel=1e-8)
    assert res.u.node_count() == nodes


def test_shooting_bracket_without_root():
    # (6, 9) sits strictly between the first two couplings of the l = 0
    # ladder at kappa = 1; the defect cannot change sign there.
    with pytest.raises(BracketError):
        shoot_coupling(1, "1", 0, bracket=(6.0, 9.0))


def test_shooting_validation():
    with pytest.raises(ValueError):
        shoot_coupling(1, "1", 0, bracket=(-1.0, 2.0))
    with pytest.raises(ValueError):
        shoot_coupling(1, "1", 2)  # no such state on the ladder


# ----------------------------------------------------------------------
# pocket threshold of the upper partner
# ----------------------------------------------------------------------

def test_critical_point_location():
    cp = critical_angular(1.0)
    assert isinstance(cp, CriticalPoint)
    assert cp.l_cr == pytest.approx(6.8766066514135975, abs=1e-6)
    assert cp.rho_cr == pytest.approx(1.5993663589673839, abs=1e-6)
    assert cp.slope_residual < 1e-8
    assert cp.curvature_residual < 1e-8
    assert cp.newton_iterations >= 1


def test_critical_point_is_deterministic():
    a = critical_angular(1.0)
    b = critical_angular(1.0)
    assert (a.l_cr, a.rho_cr) == (b.l_cr, b.rho_cr)


def test_critical_scan_finds_single_threshold():
    points = critical_angular_all(1.0)
    assert len(points) == 1
    with pytest.raises(ValueError):
        critical_angular_all(-1.0)


@pytest.mark.parametrize("l, changes", [(7, 2), (6, 0)])
def test_pocket_presence_straddles_threshold(l, changes):
    # Above the critical angular number the slope of U_plus changes sign
    # twice (well + barrier); below it the potential falls monotonically.
    rho = np.geomspace(0.5, 5.0, 2001)
    slope = partner_plus_dr(rho, 1.0, l)
    sign = np.sign(slope)
    assert int(np.sum(sign[:-1] != sign[1:])) == changes


# ----------------------------------------------------------------------
# classical orbits
# ----------------------------------------------------------------------

def test_fisheye_orbit_closes_and_focuses():
    traj = classical_trajectory("1", 3.0, 0.5, direction_deg=63.0)
    assert isinstance(traj, Trajectory)
    assert (traj.k1, traj.k2) == (1, 1)
    assert traj.closure_defect < 1e-6
    assert traj.energy_drift < 1e-8
    # image of the start point: antipodal, at the reciprocal radius
    fx, fy = traj.focal_point
    assert math.hypot(fx, fy) == pytest.approx(2.0, abs=1e-6)
    assert fx == pytest.approx(-2.0, abs=1e-6)
    assert abs(fy) < 1e-6


def test_focal_point_is_direction_independent():
    a = classical_trajectory("1", 3.0, 0.5, direction_deg=63.0)
    b = classical_trajectory("1", 3.0, 0.5, direction_deg=100.0)
    dist = math.hypot(a.focal_point[0] - b.focal_point[0],
                      a.focal_point[1] - b.focal_point[1])
    assert dist < 1e-9


def test_half_exponent_orbit_closes_after_two_revolutions():
    traj = classical_trajectory("1/2", 2.0, 0.5, direction_deg=63.0)
    assert (traj.k1, traj.k2) == (1, 2)
    assert traj.closure_defect < 1e-8
    assert traj.energy_drift < 1e-8
    fx, fy = traj.focal_point
    assert fx == pytest.approx(2.0, abs=1e-6)
    assert abs(fy) < 1e-6


def test_trajectory_sampling_and_override():
    traj = classical_trajectory("1", 3.0, 0.5, revolutions=0.5, samples=250)
    assert len(traj.t) == len(traj.x) == len(traj.vx) == 250
    assert traj.focal_time < traj.closure_time
    speeds = np.hypot(traj.vx, traj.vy)
    assert np.all(speeds > 0.0)


def test_radial_plunge_hits_origin():
    with pytest.raises(GeometryError) as info:
        classical_trajectory("1/2", 2.0, 0.5, direction_deg=180.0)
    assert info.value.kind == "origin"


def test_trajectory_validation():
    with pytest.raises(ValueError):
        classical_trajectory(math.sqrt(2.0) / 2.0, 3.0, 0.5)  # irrational exponent
    with pytest.raises(ValueError):
        classical_trajectory("1", -3.0, 0.5)
    with pytest.raises(ValueError):
        classical_trajectory("1", 3.0, -0.5)
    with pytest.raises(ValueError):
        classical_trajectory("1", 3.0, 0.5, revolutions=0.0)


def test_quadrupled_coupling_preserves_path_and_doubles_speed():
    thetas = np.array([0.3, 1.0, 2.2, 4.0])
    pos1, speed1 = trajectory_path_on_angles("1", 3.0, 0.5, thetas)
    pos4, speed4 = trajectory_path_on_angles("1", 12.0, 0.5, thetas)
    assert pos1.shape == (4, 2) and speed1.shape == (4,)
    assert np.max(np.hypot(pos1[:, 0] - pos4[:, 0], pos1[:, 1] - pos4[:, 1])) < 1e-8
    np.testing.assert_allclose(speed4 / speed1, 2.0, rtol=1e-6)
