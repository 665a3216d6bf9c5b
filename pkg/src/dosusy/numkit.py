"""Numerical kernel: ultraspherical polynomials, adaptive quadrature,
finite differences, and a damped two-dimensional Newton iteration.

Everything in here is generic plumbing used by the physics modules; nothing
knows about potentials.  The quadrature is a nested Gauss(7)/Kronrod(15)
rule with worst-interval bisection, which doubles as the oracle for the
closed-form integrals checked elsewhere, so it keeps explicit error
accounting instead of hiding it behind a library call.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, QuadratureError

__all__ = [
    "ToleranceProfile",
    "DEFAULT_PROFILE",
    "gegenbauer_eval",
    "gegenbauer_ode_residual",
    "integrate_adaptive",
    "derivative",
    "fornberg_weights",
    "grid_derivative",
    "newton2d",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical tolerances threaded through the package.

    Attributes
    ----------
    quad_tol : float
        Target for adaptive quadrature: the result satisfies
        ``|result - I| <= quad_tol * (1 + |I|)``.
    deriv_step : float
        Base finite-difference step; the actual step is scaled by
        ``max(1, |x|)`` at the evaluation point.
    root_tol : float
        Residual target for root finding (1-D and 2-D).
    """

    quad_tol: float = 1e-10
    deriv_step: float = 1e-4
    root_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("quad_tol", "deriv_step", "root_tol"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_PROFILE = ToleranceProfile()


# =====================================================================
# Ultraspherical (Gegenbauer) polynomials
# =====================================================================
#
# Three-term recurrence:
#     C_0(x) = 1
#     C_1(x) = 2 q x
#     p C_p(x) = 2 x (p + q - 1) C_{p-1}(x) - (p + 2 q - 2) C_{p-2}(x)
#
# The parameter q may be any real number (the physics needs half-integer
# and third-integer values); the degree p must be a non-negative integer.

def gegenbauer_eval(p: int, q: float, x):
    """Evaluate the ultraspherical polynomial C_p^(q) at x.

    Parameters
    ----------
    p : int
        Polynomial degree, >= 0.
    q : float
        Real order parameter (non-integer values allowed).
    x : float or ndarray
        Argument(s) in [-1, 1].

    Returns
    -------
    float or ndarray
        C_p^(q)(x), matching the shape of ``x``.
    """
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise ValueError(f"degree p must be an integer, got {p!r}")
    if p < 0:
        raise ValueError(f"degree p must be non-negative, got {p}")
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) > 1.0 + 1e-14):
        raise ValueError("argument outside [-1, 1]")

    c_prev = np.ones_like(xs)
    if p == 0:
        return c_prev if isinstance(x, np.ndarray) else float(c_prev)
    c_cur = 2.0 * q * xs
    for k in range(2, p + 1):
        c_next = (2.0 * xs * (k + q - 1.0) * c_cur - (k + 2.0 * q - 2.0) * c_prev) / k
        c_prev, c_cur = c_cur, c_next
    return c_cur if isinstance(x, np.ndarray) else float(c_cur)


def _gegenbauer_derivative(p: int, q: float, x, order: int):
    """d^order/dx^order of C_p^(q), via d/dx C_p^(q) = 2q C_{p-1}^(q+1)."""
    factor = 1.0
    for j in range(order):
        factor *= 2.0 * (q + j)
    deg = p - order
    if deg < 0:
        return np.zeros_like(np.asarray(x, dtype=float)) if isinstance(x, np.ndarray) else 0.0
    return factor * gegenbauer_eval(deg, q + order, x)


def gegenbauer_ode_residual(p: int, q: float, x):
    """Residual of the ultraspherical second-order equation at x.

    The polynomial satisfies

        (x^2 - 1) C'' + (2q + 1) x C' - p (p + 2q) C = 0,

    which this function evaluates in the normalized form

        C'' + (2q+1) x / (x^2 - 1) C' - p (p + 2q) / (x^2 - 1) C.

    Derivatives come from the exact order-raising relation, not finite
    differences, so the residual measures only the recurrence's consistency
    with the differential equation.  The endpoints x = +-1 are outside the
    domain (the normalized coefficients are singular there).
    """
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) >= 1.0):
        raise ValueError("ODE residual undefined at |x| >= 1")
    c0 = gegenbauer_eval(p, q, xs)
    c1 = _gegenbauer_derivative(p, q, xs, 1)
    c2 = _gegenbauer_derivative(p, q, xs, 2)
    denom = xs * xs - 1.0
    res = c2 + (2.0 * q + 1.0) * xs / denom * c1 - p * (p + 2.0 * q) / denom * c0
    return res if isinstance(x, np.ndarray) else float(res)


# =====================================================================
# Adaptive Gauss-Kronrod quadrature
# =====================================================================
#
# 15-point Kronrod extension of the 7-point Gauss rule (nodes/weights are
# the standard QUADPACK constants).  The embedded pair gives a per-panel
# error estimate |K15 - G7|; the worst panel is bisected until the summed
# estimate meets the tolerance.  Panels are open at their endpoints (no
# node sits on a boundary), so integrable endpoint singularities are fine
# as long as the integrand is finite at every interior node.

_KRONROD_NODES = np.array([
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993944, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0,
    0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
    0.7415311855993944, 0.8648644233597691, 0.9491079123427585,
    0.9914553711208126,
])

_KRONROD_WEIGHTS = np.array([
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786,
    0.0229353220105292,
])

# Gauss-7 weights attach to Kronrod nodes 1, 3, 5, ..., 13.
_GAUSS_WEIGHTS = np.array([
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697,
])
_GAUSS_SLOTS = slice(1, 14, 2)


def _panel(f, a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod pass over [a, b]: returns (K15 value, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _KRONROD_NODES), dtype=float)
    k15 = half * float(np.dot(_KRONROD_WEIGHTS, fx))
    g7 = half * float(np.dot(_GAUSS_WEIGHTS, fx[_GAUSS_SLOTS]))
    return k15, abs(k15 - g7)


def integrate_adaptive(f, a: float, b: float,
                       profile: ToleranceProfile = DEFAULT_PROFILE,
                       tail_power: float = 1.0,
                       max_panels: int = 4000) -> float:
    """Integrate f over (a, b) to ``quad_tol`` with nested-rule refinement.

    ``f`` must accept an ndarray of abscissae and return values elementwise.
    ``b = inf`` is supported through the half-line substitution
    rho = tan(alpha/2)^(1/tail_power), which maps (0, inf) to the finite
    alpha-interval (0, pi); ``tail_power`` is the exponent kappa of that
    map and is ignored for finite intervals.

    Raises
    ------
    QuadratureError
        If the summed error estimate still exceeds the tolerance after
        ``max_panels`` panel evaluations.  The exception carries the best
        estimate and its bound.
    """
    if math.isinf(b):
        if b < 0 or math.isinf(a):
            raise ValueError("only upper-endpoint infinity is supported")
        if a < 0:
            raise ValueError("half-line integrals need a >= 0")
        pw = float(tail_power)
        if pw <= 0:
            raise ValueError("tail_power must be positive")

        def g(alpha):
            alpha = np.asarray(alpha, dtype=float)
            rho = np.tan(0.5 * alpha) ** (1.0 / pw)
            return np.asarray(f(rho), dtype=float) * rho / (pw * np.sin(alpha))

        lo = 2.0 * math.atan(a ** pw) if a > 0 else 0.0
        return integrate_adaptive(g, lo, math.pi, profile, max_panels=max_panels)

    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("interval endpoints must be finite (or b = inf)")
    if a == b:
        return 0.0
    if b < a:
        return -integrate_adaptive(f, b, a, profile, max_panels=max_panels)

    val, err = _panel(f, a, b)
    heap = [(-err, a, b, val, err)]
    total, total_err = val, err
    panels = 1
    while total_err > profile.quad_tol * (1.0 + abs(total)):
        if panels >= max_panels:
            raise QuadratureError(
                f"quadrature stalled at error bound {total_err:.3e} "
                f"after {panels} panels",
                best_estimate=total, error_bound=total_err)
        _, pa, pb, pval, perr = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        lval, lerr = _panel(f, pa, pm)
        rval, rerr = _panel(f, pm, pb)
        total += (lval + rval) - pval
        total_err += (lerr + rerr) - perr
        heapq.heappush(heap, (-lerr, pa, pm, lval, lerr))
        heapq.heappush(heap, (-rerr, pm, pb, rval, rerr))
        panels += 2
    return total


# =====================================================================
# Finite differences
# =====================================================================

def derivative(f, x: float, order: int = 1,
               profile: ToleranceProfile = DEFAULT_PROFILE) -> float:
    """Central finite difference with one Richardson extrapolation level.

    The step is ``deriv_step * max(1, |x|)``; Richardson combination of the
    h and h/2 stencils raises both the first- and second-derivative
    formulas to fourth order.
    """
    if order not in (1, 2):
        raise ValueError("only first and second derivatives supported")
    h = profile.deriv_step * max(1.0, abs(x))

    if order == 1:
        def cd(step):
            return (f(x + step) - f(x - step)) / (2.0 * step)
    else:
        def cd(step):
            return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)

    coarse = cd(h)
    fine = cd(0.5 * h)
    return (4.0 * fine - coarse) / 3.0


def fornberg_weights(z: float, xs, m: int) -> np.ndarray:
    """Finite-difference weights on arbitrary nodes (Fornberg's recursion).

    Returns an array ``w`` of shape (m+1, len(xs)) such that
    ``w[k] @ f(xs)`` approximates the k-th derivative of f at ``z``.
    """
    xs = np.asarray(xs, dtype=float)
    n = len(xs)
    w = np.zeros((m + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = xs[0] - z
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - z
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = ((xs[i] - z) * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = (xs[i] - z) * w[0, j] / c3
        c1 = c2
    return w


def grid_derivative(grid, values, order: int = 1, stencil: int = 5) -> np.ndarray:
    """Differentiate sampled values on a (possibly non-uniform) grid.

    Uses a sliding ``stencil``-point window (centered in the interior,
    one-sided at the edges) with Fornberg weights, so log-spaced grids are
    handled without loss of order.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    n = len(grid)
    if n < stencil:
        raise ValueError(f"need at least {stencil} grid points, got {n}")
    if grid.shape != values.shape:
        raise ValueError("grid and values must have matching shapes")
    out = np.empty(n)
    half = stencil // 2
    for i in range(n):
        lo = min(max(i - half, 0), n - stencil)
        idx = slice(lo, lo + stencil)
        w = fornberg_weights(grid[i], grid[idx], order)
        out[i] = float(np.dot(w[order], values[idx]))
    return out


# =====================================================================
# Damped 2-D Newton
# =====================================================================

def _jacobian2(F, x, step):
    J = np.empty((2, 2))
    for j in range(2):
        h = step * max(1.0, abs(x[j]))
        xp = x.copy(); xp[j] += h
        xm = x.copy(); xm[j] -= h
        J[:, j] = (np.asarray(F(xp), dtype=float) - np.asarray(F(xm), dtype=float)) / (2.0 * h)
    return J


def newton2d(F, x0, profile: ToleranceProfile = DEFAULT_PROFILE,
             max_iter: int = 60) -> tuple[np.ndarray, np.ndarray, int]:
    """Solve F(x) = 0 for x in R^2 with a damped Newton iteration.

    The Jacobian is estimated by central differences; each Newton step is
    halved (up to 10 times) until the residual norm decreases.  Returns
    ``(x, F(x), iterations)``.

    Raises
    ------
    ConvergenceError
        If the residual norm fails to drop below ``root_tol`` within
        ``max_iter`` iterations, or the Jacobian becomes singular.
    """
    x = np.asarray(x0, dtype=float).copy()
    fx = np.asarray(F(x), dtype=float)
    for it in range(1, max_iter + 1):
        norm = float(np.max(np.abs(fx)))
        if norm < profile.root_tol:
            return x, fx, it - 1
        J = _jacobian2(F, x, profile.deriv_step)
        try:
            step = np.linalg.solve(J, -fx)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"singular Jacobian at x = {x.tolist()}") from exc
        lam = 1.0
        for _ in range(10):
            x_new = x + lam * step
            f_new = np.asarray(F(x_new), dtype=float)
            if float(np.max(np.abs(f_new))) < norm:
                break
            lam *= 0.5
        else:
            raise ConvergenceError(
                f"no descent direction at x = {x.tolist()} (|F| = {norm:.3e})")
        x, fx = x_new, f_new
    raise ConvergenceError(
        f"Newton failed to converge in {max_iter} iterations "
        f"(|F| = {float(np.max(np.abs(fx))):.3e})")
