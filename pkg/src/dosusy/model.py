"""Zero-energy focusing potential family and its bound-family states.

Scaled units throughout: radii in units of the focusing radius R
(rho = r/R) and energies in units of E0 = hbar^2 / (2 m R^2).  The family
is parametrized by a positive shape exponent kappa and a positive coupling
strength w:

    U(rho) = -w * rho^(2 kappa - 2) / (1 + rho^(2 kappa))^2

kappa = 1 is the wave-optics fish-eye profile; kappa = 1/2 reproduces the
shell-filling (Aufbau) case.  Zero-energy normalizable-family solutions of
the radial problem exist on the quantized coupling ladder

    w(N, kappa) = (2 kappa)^2 (N + 1/(2 kappa) - 1) (N + 1/(2 kappa)),

with radial factors built from ultraspherical polynomials in the compact
coordinate xi = (1 - rho^(2 kappa)) / (1 + rho^(2 kappa)) = cos(alpha),
alpha = 2 arctan(rho^kappa).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import NonNormalizableStateError
from .numkit import DEFAULT_PROFILE, ToleranceProfile, gegenbauer_eval, integrate_adaptive

__all__ = [
    "ModelParams",
    "StateLabel",
    "SampledFunction",
    "parse_kappa",
    "default_grid",
    "map_coordinates",
    "potential",
    "coupling_quantized",
    "f_factor",
    "state_quantum_numbers",
    "radial_u",
    "is_normalizable",
    "normalization_constant",
    "effective_potential_general",
    "make_state",
    "enumerate_shell",
]


def parse_kappa(value) -> tuple[float, Fraction | None]:
    """Normalize a shape exponent given as float, Fraction, int, or "k1/k2".

    Returns ``(kappa, exact)`` where ``exact`` is a small-denominator
    Fraction when one represents the input to 1e-12 (needed by operations
    that demand exact rational arithmetic), else None.
    """
    if isinstance(value, Fraction):
        exact = value
    elif isinstance(value, (int, np.integer)):
        exact = Fraction(int(value))
    elif isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            exact = Fraction(int(num), int(den))
        else:
            exact = Fraction(text).limit_denominator(64)
            if abs(float(exact) - float(text)) > 1e-12 * max(1.0, abs(float(text))):
                exact = None
            kappa = float(text)
            if kappa <= 0:
                raise ValueError(f"kappa must be positive, got {kappa}")
            return kappa, exact
    elif isinstance(value, float):
        exact = Fraction(value).limit_denominator(64)
        if abs(float(exact) - value) > 1e-12 * max(1.0, abs(value)):
            exact = None
    else:
        raise TypeError(f"cannot interpret kappa from {value!r}")
    kappa = float(exact) if exact is not None else float(value)
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    return kappa, exact


@dataclass(frozen=True)
class ModelParams:
    """Potential parameters: coupling w > 0 and shape exponent kappa > 0.

    ``kappa_exact`` carries the rational form when available; operations
    that label states need it, pointwise evaluations do not.
    """

    w: float
    kappa: float
    kappa_exact: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.w > 0:
            raise ValueError(f"coupling w must be positive, got {self.w}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.kappa_exact is not None and abs(float(self.kappa_exact) - self.kappa) > 1e-12:
            raise ValueError("kappa_exact inconsistent with kappa")


@dataclass(frozen=True)
class StateLabel:
    """Bound-family state label.

    N is the principal label on the coupling ladder; n = n_r + l + 1 is the
    familiar principal quantum number; n_r counts radial nodes.  They are
    tied together by N = n + (1/kappa - 1) l, so for kappa = 1 the label N
    coincides with n.
    """

    N: int
    l: int
    m: int = 0
    n_r: int = field(default=-1)
    n: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"|m| must not exceed l, got m={self.m}, l={self.l}")


def make_state(N: int, l: int, kappa, m: int = 0) -> StateLabel:
    """Build a validated StateLabel for the given shape exponent.

    Uses exact rational arithmetic: l / kappa must make n_r = N - 1 - l/kappa
    a non-negative integer, otherwise the (N, l) pair does not exist at this
    kappa and a ValueError is raised.
    """
    _, exact = parse_kappa(kappa)
    if exact is None:
        raise ValueError("state labelling needs an exact rational kappa")
    ratio = Fraction(l) / exact
    if ratio.denominator != 1:
        raise ValueError(f"l = {l} invalid at kappa = {exact}: l/kappa not an integer")
    n_r = N - 1 - int(ratio)
    if n_r < 0:
        raise ValueError(f"(N={N}, l={l}) invalid at kappa = {exact}: negative node count")
    return StateLabel(N=N, l=l, m=m, n_r=n_r, n=n_r + l + 1)


class SampledFunction:
    """A function sampled on a strictly increasing positive radial grid."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values):
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if len(grid) < 2:
            raise ValueError("need at least two samples")
        if not np.all(np.isfinite(grid)) or not np.all(np.isfinite(values)):
            raise ValueError("grid and values must be finite")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be positive and strictly increasing")
        self.grid = grid
        self.values = values

    def __len__(self) -> int:
        return len(self.grid)

    def node_count(self) -> int:
        """Number of strict sign changes (zero samples are skipped)."""
        v = self.values[np.abs(self.values) > 0]
        return int(np.sum(np.sign(v[:-1]) != np.sign(v[1:])))


def default_grid(lo: float = 1e-3, hi: float = 1e3, n: int = 400) -> np.ndarray:
    """Log-spaced radial grid used by curve emitters and grid checks.

    When the range brackets rho = 1 the grid contains it exactly (it is the
    potential's symmetry point, the branch-matching radius, and the anchor
    of the one-parameter families), by splicing two log-spaced sections of
    imperceptibly different ratios.
    """
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    if n < 2:
        raise ValueError("need at least two points")
    if not (lo < 1.0 < hi):
        return np.geomspace(lo, hi, n)
    n_lo = int(round((n - 1) * np.log(1.0 / lo) / np.log(hi / lo)))
    n_lo = max(1, min(n - 2, n_lo))
    left = np.geomspace(lo, 1.0, n_lo + 1)
    right = np.geomspace(1.0, hi, n - n_lo)
    return np.concatenate([left, right[1:]])


def _check_rho(rho):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("rho must be strictly positive")
    return rho


def map_coordinates(rho, kappa: float):
    """Compact coordinates of the radius: xi in (-1, 1) and alpha in (0, pi).

    xi = (1 - rho^(2 kappa)) / (1 + rho^(2 kappa)),  alpha = 2 arctan(rho^kappa),
    tied by xi = cos(alpha).  rho = 1 maps to (0, pi/2); inverting the radius
    flips the sign of xi.
    """
    scalar = np.isscalar(rho)
    rho = _check_rho(rho)
    t = rho ** float(kappa)
    xi = (1.0 - t * t) / (1.0 + t * t)
    alpha = 2.0 * np.arctan(t)
    if scalar:
        return float(xi), float(alpha)
    return xi, alpha


def potential(rho, w: float, kappa: float):
    """Scaled potential U(rho) = -w rho^(2k-2) / (1 + rho^(2k))^2 (units E0)."""
    scalar = np.isscalar(rho)
    rho = _check_rho(rho)
    if w <= 0:
        raise ValueError(f"coupling w must be positive, got {w}")
    t2k = rho ** (2.0 * kappa)
    u = -w * rho ** (2.0 * kappa - 2.0) / (1.0 + t2k) ** 2
    return float(u) if scalar else u


def coupling_quantized(N: int, kappa: float) -> float:
    """Quantized coupling w(N, kappa) = (2k)^2 (N + 1/(2k) - 1)(N + 1/(2k))."""
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    half = 1.0 / (2.0 * kappa)
    return (2.0 * kappa) ** 2 * (N + half - 1.0) * (N + half)


def f_factor(rho, kappa: float, l: int):
    """Nodeless radial factor f = rho^(l+1) / (1 + rho^(2k))^((2l+1)/(2k)).

    This is the half-line ground solution at the bottom of each l-ladder and
    the weight multiplying the ultraspherical polynomial in every u.
    """
    scalar = np.isscalar(rho)
    rho = _check_rho(rho)
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    f = rho ** (l + 1.0) / (1.0 + rho ** (2.0 * kappa)) ** ((2.0 * l + 1.0) / (2.0 * kappa))
    return float(f) if scalar else f


def state_quantum_numbers(N: int, l: int, kappa) -> tuple[int, float]:
    """Polynomial degree p = N - 1 - l/kappa and order q = (2l+1)/(2k) + 1/2.

    p must come out a non-negative integer for the state to exist; exact
    rational arithmetic is used when kappa allows it.
    """
    kappa_f, exact = parse_kappa(kappa)
    if exact is not None:
        ratio = Fraction(l) / exact
        if ratio.denominator != 1:
            raise ValueError(f"no state at (N={N}, l={l}, kappa={exact}): l/kappa not integer")
        p = N - 1 - int(ratio)
    else:
        raw = N - 1 - l / kappa_f
        p = int(round(raw))
        if abs(raw - p) > 1e-9:
            raise ValueError(f"no state at (N={N}, l={l}, kappa={kappa_f}): p = {raw}")
    if p < 0:
        raise ValueError(f"no state at (N={N}, l={l}): negative degree p = {p}")
    q = (2.0 * l + 1.0) / (2.0 * kappa_f) + 0.5
    return p, q


def radial_u(rho, N: int, l: int, kappa, normalized: bool = False,
             profile: ToleranceProfile = DEFAULT_PROFILE):
    """Half-line radial solution u = rho * R at the quantized coupling.

    u(rho) = f(rho) * C_p^(q)(xi(rho)) with p radial nodes.  With
    ``normalized=True`` the result is scaled to unit norm on (0, inf);
    states with l = 0 are not normalizable and raise
    NonNormalizableStateError in that mode.
    """
    kappa_f, _ = parse_kappa(kappa)
    p, q = state_quantum_numbers(N, l, kappa)
    scalar = np.isscalar(rho)
    rho = _check_rho(rho)
    xi, _ = map_coordinates(rho, kappa_f)
    u = f_factor(rho, kappa_f, l) * gegenbauer_eval(p, q, np.asarray(xi))
    if normalized:
        u = u * normalization_constant(N, l, kappa, profile=profile)
    return float(u) if scalar else u


def is_normalizable(N: int, l: int, kappa) -> bool:
    """Whether the norm integral of u converges on (0, inf).

    The tail behaves as u ~ rho^(-l) times a non-vanishing polynomial value,
    so the integral of u^2 converges exactly when l >= 1; every l = 0 member
    tends to a constant and diverges linearly.
    """
    state_quantum_numbers(N, l, kappa)  # existence check
    return l >= 1


def normalization_constant(N: int, l: int, kappa,
                           profile: ToleranceProfile = DEFAULT_PROFILE) -> float:
    """Positive constant scaling u to unit half-line norm.

    Evaluated as 1/sqrt(integral of u^2 d rho) with the half-line folded to
    a finite alpha-interval through rho^kappa = tan(alpha/2).

    Raises
    ------
    NonNormalizableStateError
        For l = 0 states (divergent norm; nothing is silently rescaled).
    """
    kappa_f, _ = parse_kappa(kappa)
    if not is_normalizable(N, l, kappa):
        raise NonNormalizableStateError(
            f"state (N={N}, l={l}, kappa={kappa_f}) is not normalizable: "
            "u tends to a non-zero constant at large rho")

    def integrand(r):
        return radial_u(r, N, l, kappa) ** 2

    norm2 = integrate_adaptive(integrand, 0.0, np.inf, profile, tail_power=kappa_f)
    return 1.0 / np.sqrt(norm2)


def effective_potential_general(rho, w: float, kappa: float, l: int):
    """Half-line effective potential l(l+1)/rho^2 + U(rho) for arbitrary w.

    At the quantized coupling w(N, kappa) with N = 1 + l/kappa this is the
    lower SUSY partner of the l-ladder.
    """
    scalar = np.isscalar(rho)
    rho = _check_rho(rho)
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    ueff = l * (l + 1.0) / rho ** 2 + potential(rho, w, kappa)
    return float(ueff) if scalar else ueff


def enumerate_shell(N: int, kappa) -> list[StateLabel]:
    """All states sharing the coupling w(N, kappa), one label per (l, m).

    l runs over the values making n_r = N - 1 - l/kappa a non-negative
    integer (multiples of k1 for kappa = k1/k2 in lowest terms); each l
    contributes 2l + 1 labels.  For kappa = 1 the total count is N^2.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    _, exact = parse_kappa(kappa)
    if exact is None:
        raise ValueError("shell enumeration needs an exact rational kappa")
    k1, k2 = exact.numerator, exact.denominator
    states: list[StateLabel] = []
    # l/kappa = l k2/k1 integral (lowest terms) <=> l is a multiple of k1
    l = 0
    while N - 1 - (l * k2) // k1 >= 0:
        for m in range(-l, l + 1):
            states.append(make_state(N, l, exact, m=m))
        l += k1
    return states
