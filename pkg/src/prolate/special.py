"""Self-contained special-function kernel.

Normalized Legendre polynomials, Bessel functions J0/J1/Y0 and half-integer
order J_{k+1/2}, half-integer Gamma values, the elliptic phase integral of
the WKB transform, and Gauss-Legendre quadrature rules.  Everything here is
pure and reentrant; returned rule objects are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

__all__ = [
    "QuadratureRule",
    "PhaseIntegral",
    "gauss_legendre",
    "legendre_normalized",
    "legendre_normalized_table",
    "legendre_normalized_deriv",
    "legendre_normalized_deriv_table",
    "bessel_j0j1y0",
    "j0",
    "j1",
    "y0",
    "bessel_j_half",
    "bessel_j_half_all",
    "spherical_jn_scaled",
    "gamma_half_integer",
    "log_gamma_half_integer",
    "phase_S",
    "phase_integral",
    "chebyshev_points",
    "refined_grid_max",
]

_EULER_GAMMA = 0.57721566490153286061


# ---------------------------------------------------------------------------
# Legendre polynomials, L2-normalized on [-1, 1]
# ---------------------------------------------------------------------------

def legendre_normalized(n: int, x):
    """Evaluate sqrt(n+1/2) * P_n(x) by the three-term recurrence.

    Accepts a scalar or an array; |x| <= 1 is assumed but not enforced
    (the recurrence itself is valid for all real x).
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        out = math.sqrt(0.5) * p_prev
        return float(out) if out.ndim == 0 else out
    p = x.copy()
    for k in range(1, n):
        p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
    out = math.sqrt(n + 0.5) * p
    return float(out) if out.ndim == 0 else out


def legendre_normalized_table(n_max: int, x) -> np.ndarray:
    """Table of normalized Legendre values, shape (n_max+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    table = np.empty((n_max + 1, x.size))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = x
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1) * x * table[k] - k * table[k - 1]) / (k + 1)
    scale = np.sqrt(np.arange(n_max + 1) + 0.5)
    return table * scale[:, None]


def legendre_normalized_deriv(n: int, x):
    """Derivative of the normalized Legendre polynomial, |x| < 1 only.

    Uses (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x)), which is singular at
    the endpoints; |x| = 1 is rejected.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) >= 1.0):
        raise ValueError("derivative recurrence requires |x| < 1")
    if n == 0:
        out = np.zeros_like(x_arr)
    else:
        p_nm1 = legendre_normalized(n - 1, x_arr) / math.sqrt(n - 0.5)
        p_n = legendre_normalized(n, x_arr) / math.sqrt(n + 0.5)
        out = math.sqrt(n + 0.5) * n * (p_nm1 - x_arr * p_n) / (1.0 - x_arr**2)
    return float(out[0]) if np.isscalar(x) or np.asarray(x).ndim == 0 else out


def legendre_normalized_deriv_table(n_max: int, x) -> np.ndarray:
    """Table of first derivatives of normalized Legendre polynomials, |x| < 1."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x) >= 1.0):
        raise ValueError("derivative recurrence requires |x| < 1")
    plain = legendre_normalized_table(n_max, x) / np.sqrt(
        np.arange(n_max + 1) + 0.5)[:, None]
    table = np.zeros_like(plain)
    one_minus = 1.0 - x**2
    for n in range(1, n_max + 1):
        table[n] = n * (plain[n - 1] - x * plain[n]) / one_minus
    return table * np.sqrt(np.arange(n_max + 1) + 0.5)[:, None]


# ---------------------------------------------------------------------------
# Bessel functions J0, J1, Y0 on the positive axis
# ---------------------------------------------------------------------------
#
# Three regimes: Taylor series up to x = 9 (cancellation still below 1e-12),
# Schlaefli integrals evaluated by a fixed Gauss-Legendre rule on (9, 21),
# and the Hankel modulus/phase asymptotic series from 21 on, where its
# smallest term is already below 1e-18.

_SERIES_CUT = 9.0
_ASYMPTOTIC_CUT = 21.0


def _j0_series(x: np.ndarray) -> np.ndarray:
    z = -0.25 * x * x
    term = np.ones_like(x)
    acc = term.copy()
    for k in range(1, 45):
        term = term * z / (k * k)
        acc += term
    return acc


def _j1_series(x: np.ndarray) -> np.ndarray:
    z = -0.25 * x * x
    term = np.ones_like(x)
    acc = term.copy()
    for k in range(1, 45):
        term = term * z / (k * (k + 1))
        acc += term
    return 0.5 * x * acc


def _y0_series(x: np.ndarray) -> np.ndarray:
    z = 0.25 * x * x
    term = np.ones_like(x)
    acc = np.zeros_like(x)
    harmonic = 0.0
    for k in range(1, 45):
        term = term * z / (k * k)
        harmonic += 1.0 / k
        sign = 1.0 if k % 2 == 1 else -1.0
        acc += sign * harmonic * term
    return (2.0 / math.pi) * ((np.log(0.5 * x) + _EULER_GAMMA) * _j0_series(x) + acc)


@lru_cache(maxsize=None)
def _bessel_integral_nodes():
    rule = gauss_legendre(160)
    theta = 0.5 * math.pi * (rule.nodes + 1.0)
    w = 0.5 * math.pi * rule.weights
    return theta, np.sin(theta), w


def _j0_integral(x: np.ndarray) -> np.ndarray:
    _, sin_t, w = _bessel_integral_nodes()
    return np.cos(np.outer(x, sin_t)) @ w / math.pi


def _j1_integral(x: np.ndarray) -> np.ndarray:
    theta, sin_t, w = _bessel_integral_nodes()
    return np.cos(theta[None, :] - np.outer(x, sin_t)) @ w / math.pi


def _y0_integral(x: np.ndarray) -> np.ndarray:
    _, sin_t, w = _bessel_integral_nodes()
    oscillatory = np.sin(np.outer(x, sin_t)) @ w / math.pi
    rule = gauss_legendre(96)
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        t_max = math.asinh(42.0 / xi)
        t = 0.5 * t_max * (rule.nodes + 1.0)
        out[i] = 0.5 * t_max * np.dot(rule.weights, np.exp(-xi * np.sinh(t)))
    return oscillatory - 2.0 / math.pi * out


def _hankel_pq(nu: int, x: np.ndarray):
    four_nu2 = 4.0 * nu * nu
    a = np.ones_like(x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    xk = np.ones_like(x)
    for k in range(1, 27):
        a = a * (four_nu2 - (2 * k - 1) ** 2) / (8.0 * k)
        xk = xk / x
        if k % 2 == 1:
            q += (-1.0) ** ((k - 1) // 2) * a * xk
        else:
            p += (-1.0) ** (k // 2) * a * xk
    return p, q


def _bessel_asymptotic(nu: int, x: np.ndarray, kind: str) -> np.ndarray:
    p, q = _hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = np.sqrt(2.0 / (math.pi * x))
    if kind == "j":
        return amp * (p * np.cos(chi) - q * np.sin(chi))
    return amp * (p * np.sin(chi) + q * np.cos(chi))


def _bessel_eval(x, series, integral, asymptotic):
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x_arr)
    small = x_arr <= _SERIES_CUT
    mid = (x_arr > _SERIES_CUT) & (x_arr < _ASYMPTOTIC_CUT)
    big = x_arr >= _ASYMPTOTIC_CUT
    if small.any():
        out[small] = series(x_arr[small])
    if mid.any():
        out[mid] = integral(x_arr[mid])
    if big.any():
        out[big] = asymptotic(x_arr[big])
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def j0(x):
    """Bessel function of the first kind, order zero, x >= 0."""
    if np.any(np.asarray(x) < 0):
        raise ValueError("j0 requires x >= 0")
    return _bessel_eval(x, _j0_series, _j0_integral,
                        lambda t: _bessel_asymptotic(0, t, "j"))


def j1(x):
    """Bessel function of the first kind, order one, x >= 0."""
    if np.any(np.asarray(x) < 0):
        raise ValueError("j1 requires x >= 0")
    return _bessel_eval(x, _j1_series, _j1_integral,
                        lambda t: _bessel_asymptotic(1, t, "j"))


def y0(x):
    """Bessel function of the second kind, order zero, x > 0 only."""
    if np.any(np.asarray(x) <= 0):
        raise ValueError("y0 requires x > 0")
    return _bessel_eval(x, _y0_series, _y0_integral,
                        lambda t: _bessel_asymptotic(0, t, "y"))


def bessel_j0j1y0(x: float):
    """Return (J0(x), J1(x), Y0(x)) for x > 0."""
    if x <= 0:
        raise ValueError("bessel_j0j1y0 requires x > 0 (Y0 diverges at 0)")
    return j0(x), j1(x), y0(x)


# ---------------------------------------------------------------------------
# Half-integer order Bessel functions via spherical Bessel recurrence
# ---------------------------------------------------------------------------

_RESCALE = 1e200
_LOG_RESCALE = math.log(_RESCALE)


def _log_double_factorial_odd(k: int) -> float:
    """log((2k+1)!!) via (2k+1)!! = (2k+1)! / (2^k k!)."""
    return math.lgamma(2 * k + 2) - k * math.log(2.0) - math.lgamma(k + 1)


def spherical_jn_scaled(k_max: int, x: float):
    """Spherical Bessel functions j_0..j_{k_max}(x) in sign/log form.

    Returns (signs, logabs) with j_k(x) = signs[k] * exp(logabs[k]).  Uses
    Miller's downward recurrence started at k_max + 20 + x and normalized
    against the closed forms of j_0 or j_1 (whichever is away from a zero),
    with rescaling so that arbitrarily large starting orders cannot
    overflow.  The log form keeps orders far beyond the turning point
    meaningful even when the plain value underflows.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if x < 0:
        raise ValueError("x must be >= 0")
    signs = np.zeros(k_max + 1)
    logabs = np.full(k_max + 1, -np.inf)
    if x == 0.0:
        signs[0] = 1.0
        logabs[0] = 0.0
        return signs, logabs
    if x < 1e-8:
        # two-term Taylor expansion; relative error O(x^4)
        k = np.arange(k_max + 1)
        lndf = np.array([_log_double_factorial_odd(int(kk)) for kk in k])
        signs[:] = 1.0
        logabs[:] = k * math.log(x) - lndf + np.log1p(-x * x / (2.0 * (2 * k + 3)))
        return signs, logabs

    # Start well above both the target order and the turning point; the
    # extra x^(1/3) margin covers the slow Airy-regime decay near m ~ x.
    m_start = k_max + 20 + int(math.ceil(x + 10.0 * x ** (1.0 / 3.0)))
    v_hi = 0.0          # j_{m+1} (unnormalized)
    v_lo = 1e-290       # j_m
    offset = 0.0        # log of accumulated rescales
    work = np.zeros(k_max + 2)
    offsets = np.zeros(k_max + 2)
    for m in range(m_start, -1, -1):
        if m <= k_max + 1:
            work[m] = v_lo
            offsets[m] = offset
        v_new = (2 * m + 1) / x * v_lo - v_hi
        v_hi, v_lo = v_lo, v_new
        if abs(v_lo) > _RESCALE:
            v_lo /= _RESCALE
            v_hi /= _RESCALE
            offset += _LOG_RESCALE
    # v_lo now holds unnormalized j_{-1}; work[k] holds unnormalized j_k.
    j0_true = math.sin(x) / x
    j1_true = math.sin(x) / (x * x) - math.cos(x) / x
    u0 = work[0]
    u1 = work[1] * math.exp(offsets[1] - offsets[0]) if k_max >= 1 else 0.0
    if k_max >= 1 and abs(u1) > abs(u0):
        ref_true, ref_val, ref_off = j1_true, work[1], offsets[1]
    else:
        ref_true, ref_val, ref_off = j0_true, work[0], offsets[0]
    if ref_val == 0.0 or ref_true == 0.0:
        raise ArithmeticError("Miller normalization failed at x = %g" % x)
    log_alpha = math.log(abs(ref_true)) - math.log(abs(ref_val)) - ref_off
    sign_alpha = math.copysign(1.0, ref_true) * math.copysign(1.0, ref_val)
    w = work[: k_max + 1]
    nz = w != 0.0
    signs[nz] = sign_alpha * np.sign(w[nz])
    logabs[nz] = log_alpha + np.log(np.abs(w[nz])) + offsets[: k_max + 1][nz]
    return signs, logabs


def bessel_j_half_all(k_max: int, x: float) -> np.ndarray:
    """J_{k+1/2}(x) for k = 0..k_max; entries below double range become 0."""
    if x == 0.0:
        return np.zeros(k_max + 1)
    signs, logabs = spherical_jn_scaled(k_max, x)
    log_pref = 0.5 * math.log(2.0 * x / math.pi)
    with np.errstate(under="ignore"):
        return signs * np.exp(logabs + log_pref)


def bessel_j_half(k: int, x: float) -> float:
    """Half-integer Bessel function J_{k+1/2}(x), x >= 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return float(bessel_j_half_all(k, x)[k])


# ---------------------------------------------------------------------------
# Gamma at half-integers
# ---------------------------------------------------------------------------

def gamma_half_integer(k: int) -> float:
    """Gamma(k + 3/2) = sqrt(pi) (2k+1)!! / 2^{k+1}.

    Evaluated as an explicit product up to k = 150 and through lgamma in
    log space beyond that (the value itself overflows near k = 170 and
    then comes back as inf, which is the correctly rounded double).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k <= 150:
        g = math.sqrt(math.pi) / 2.0
        for j in range(1, k + 1):
            g *= j + 0.5
        return g
    try:
        return math.exp(log_gamma_half_integer(k))
    except OverflowError:
        return math.inf


def log_gamma_half_integer(k: int) -> float:
    """log Gamma(k + 3/2), valid for any k >= 0 without overflow."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.lgamma(k + 1.5)


# ---------------------------------------------------------------------------
# Elliptic phase integral S_q
# ---------------------------------------------------------------------------

def phase_S(q: float, x: float) -> float:
    """S_q(x) = integral_x^1 sqrt((1-q t^2)/(1-t^2)) dt for 0 <= q < 1.

    Computed after the substitution t = cos(theta), which turns the
    integrand into the smooth sqrt(1 - q cos^2 theta) on [0, arccos x],
    integrated adaptively to 1e-12 absolute.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError("phase integral requires 0 <= q < 1")
    if not 0.0 <= x <= 1.0:
        raise ValueError("phase integral requires 0 <= x <= 1")
    if x == 1.0:
        return 0.0
    phi = math.acos(x)
    val, _ = quad(lambda th: math.sqrt(1.0 - q * math.cos(th) ** 2), 0.0, phi,
                  epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


@dataclass(frozen=True)
class PhaseIntegral:
    """Evaluator for S_q on [0, 1] together with its inverse on [0, S_q(0)]."""

    q: float
    s0: float

    def __call__(self, x: float) -> float:
        return phase_S(self.q, x)

    def value(self, x: float) -> float:
        return phase_S(self.q, x)

    def inverse(self, s: float) -> float:
        """Return the x in [0, 1] with S_q(x) = s (S_q is strictly decreasing)."""
        if not 0.0 <= s <= self.s0 * (1.0 + 1e-12):
            raise ValueError("inverse argument outside [0, S_q(0)]")
        if s <= 0.0:
            return 1.0
        if s >= self.s0:
            return 0.0
        return brentq(lambda x: phase_S(self.q, x) - s, 0.0, 1.0, xtol=1e-14)


def phase_integral(q: float) -> PhaseIntegral:
    """Construct the S_q evaluator, precomputing S_q(0)."""
    return PhaseIntegral(q=q, s0=phase_S(q, 0.0))


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature on [-1, 1]
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]; immutable."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        """Integrate a callable or an array of node values against the rule."""
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return float(np.dot(self.weights, vals))


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> QuadratureRule:
    """Nodes and weights of the order-m Gauss-Legendre rule.

    Newton iteration on the Legendre recurrence from the Chebyshev-type
    initial guess; nodes are symmetrized to remove asymmetric rounding.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    m = order
    i = np.arange(1, m + 1)
    x = np.cos(math.pi * (i - 0.25) / (m + 0.5))
    for _ in range(100):
        p_prev = np.ones_like(x)
        p = x.copy()
        for k in range(1, m):
            p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
        dp = m * (p_prev - x * p) / (1.0 - x**2)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, m):
        p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
    dp = m * (p_prev - x * p) / (1.0 - x**2)
    w = 2.0 / ((1.0 - x**2) * dp**2)
    # enforce exact symmetry of the rule
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    order_idx = np.argsort(x)
    x = x[order_idx]
    w = w[order_idx]
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(order=m, nodes=x, weights=w)


# ---------------------------------------------------------------------------
# Grid helpers for sup norms
# ---------------------------------------------------------------------------

def chebyshev_points(n: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """n Chebyshev-distributed points on [lo, hi], endpoints included."""
    theta = np.linspace(0.0, math.pi, n)
    t = np.cos(theta)[::-1]
    return lo + 0.5 * (hi - lo) * (t + 1.0)


def refined_grid_max(fn, lo: float = -1.0, hi: float = 1.0, size: int = 400,
                     refine: int = 3, refine_size: int = 50) -> float:
    """Sup of |fn| on a Chebyshev grid, refined around the largest values.

    fn must accept an array.  The top `refine` coarse maxima each get a
    local sub-grid of `refine_size` points spanning their neighbor gap,
    which resolves envelopes of functions oscillating up to a few hundred
    times on the interval.
    """
    grid = chebyshev_points(size, lo, hi)
    vals = np.abs(np.asarray(fn(grid), dtype=float))
    best = float(vals.max())
    top = np.argsort(vals)[-refine:]
    for idx in top:
        a = grid[max(idx - 1, 0)]
        b = grid[min(idx + 1, size - 1)]
        if b <= a:
            continue
        local = np.linspace(a, b, refine_size)
        best = max(best, float(np.max(np.abs(np.asarray(fn(local), dtype=float)))))
    return best
