"""PSWF basis construction and evaluation.

Builds the prolate spheroidal wave functions for a bandwidth c by solving
the classical Flammer eigensystem: the Legendre coefficients beta_k of each
psi_n satisfy a three-term recurrence in k (step 2), equivalent to a pair
of symmetric tridiagonal eigenproblems, one per parity.  Provides
evaluation inside [-1, 1] (Clenshaw on the Legendre series), the Slepian
analytic extension outside, derivatives, the finite-Fourier-operator
eigenvalues mu_n, and the sinc-kernel eigenvalues lambda_n.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .special import (
    legendre_normalized_deriv_table,
    legendre_normalized_table,
    spherical_jn_scaled,
)

__all__ = [
    "EigSystemOptions",
    "PswfBasis",
    "build_basis",
    "eval_inside",
    "eval_outside",
    "eval_derivative",
    "eval_second_derivative",
    "derivative_at_zero",
    "compute_mu",
    "psi_table",
    "psi_outside_table",
    "mu_psi_outside_table",
    "save_basis",
    "load_basis",
]

_MAX_DIMENSION = 4096
_LAMBDA_SLACK = 1e-10


@dataclass
class EigSystemOptions:
    """Knobs for the eigensystem solve.

    matrix_dimension is the largest Legendre index kept (auto-sized from
    n_max and c when None); tail_tolerance bounds the admissible magnitude
    of the last kept coefficient of every requested eigenvector.
    """

    matrix_dimension: Optional[int] = None
    eig_tolerance: float = 1e-12
    tail_tolerance: float = 1e-13

    def __post_init__(self):
        if self.eig_tolerance <= 0 or self.tail_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class PswfBasis:
    """Immutable-by-convention container for one bandwidth.

    chi[n] are the Sturm-Liouville eigenvalues, beta[n, k] the coefficients
    in the orthonormal Legendre basis (zero at opposite parity), psi1[n]
    the boundary values psi_n(1) > 0.  For c > 0, mu[n] are the eigenvalues
    of the finite Fourier operator, lam[n] = c |mu_n|^2 / (2 pi) those of
    the sinc kernel, and log_lambda[n] their logarithms computed in scaled
    arithmetic (meaningful far past double-precision underflow of lam).
    """

    c: float
    n_max: int
    K: int
    chi: np.ndarray
    beta: np.ndarray
    psi1: np.ndarray
    mu: Optional[np.ndarray] = None
    lam: Optional[np.ndarray] = None
    log_lambda: Optional[np.ndarray] = None
    # largest n whose lambda_n survived the alternating Fourier sum without
    # catastrophic cancellation; entries beyond are double-precision noise
    # floor (~1e-75) and only guaranteed to be tiny, not accurate
    n_lambda_reliable: Optional[int] = None

    def parity_indices(self, n: int) -> np.ndarray:
        return np.arange(n % 2, self.K + 1, 2)


def _flammer_diagonals(k: np.ndarray, c: float):
    """Diagonal and k<->k+2 coupling of the symmetric tridiagonal system."""
    kk = k.astype(float)
    diag = kk * (kk + 1) + c * c * (2 * kk * (kk + 1) - 1) / (
        (2 * kk + 3) * (2 * kk - 1))
    off = c * c * (kk + 1) * (kk + 2) / (
        (2 * kk + 3) * np.sqrt((2 * kk + 1) * (2 * kk + 5)))
    return diag, off


def _solve_parity(c: float, k_vals: np.ndarray):
    diag, off = _flammer_diagonals(k_vals, c)
    if len(k_vals) == 1:
        return diag.copy(), np.ones((1, 1))
    w, v = eigh_tridiagonal(diag, off[:-1])
    return w, v


def build_basis(c: float, n_max: int,
                opts: Optional[EigSystemOptions] = None) -> PswfBasis:
    """Build the PSWF basis for bandwidth c up to order n_max.

    The coefficient recurrence splits into even-k and odd-k symmetric
    tridiagonal matrices; their eigenvalues, merged in increasing order,
    give chi_n, and the orthonormal eigenvectors give beta_k^n with the
    sign fixed by psi_n(1) > 0.  The matrix is enlarged and re-solved if
    the last kept coefficient of any requested eigenvector exceeds the
    tail tolerance.
    """
    if c < 0:
        raise ValueError("bandwidth c must be >= 0")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    opts = opts or EigSystemOptions()

    if c == 0.0:
        # Degenerate limit: psi_{n,0} is the normalized Legendre polynomial.
        n = np.arange(n_max + 1, dtype=float)
        chi = n * (n + 1)
        beta = np.eye(n_max + 1)
        psi1 = np.sqrt(n + 0.5)
        return PswfBasis(c=0.0, n_max=n_max, K=n_max, chi=chi, beta=beta,
                         psi1=psi1)

    dim = int(math.ceil(n_max + 2 * c + 30))
    if opts.matrix_dimension is not None:
        dim = max(dim, opts.matrix_dimension)
    dim = min(dim, _MAX_DIMENSION)

    while True:
        K = dim
        k_even = np.arange(0, K + 1, 2)
        k_odd = np.arange(1, K + 1, 2)
        w_e, v_e = _solve_parity(c, k_even)
        w_o, v_o = _solve_parity(c, k_odd)

        chi = np.empty(n_max + 1)
        beta = np.zeros((n_max + 1, K + 1))
        tail_ok = True
        for n in range(n_max + 1):
            j = n // 2
            if n % 2 == 0:
                chi[n] = w_e[j]
                vec = v_e[:, j]
                cols = k_even
            else:
                chi[n] = w_o[j]
                vec = v_o[:, j]
                cols = k_odd
            if abs(vec[-1]) > opts.tail_tolerance:
                tail_ok = False
                break
            beta[n, cols] = vec / np.linalg.norm(vec)
        if tail_ok:
            break
        if dim >= _MAX_DIMENSION:
            raise RuntimeError(
                "coefficient tail above %.1e even at dimension %d; "
                "larger matrix required" % (opts.tail_tolerance, dim))
        dim = min(2 * dim, _MAX_DIMENSION)

    # Sign convention psi_n(1) > 0.  For n well below the plateau edge at
    # large c the boundary value is exponentially small and its Legendre sum
    # is pure rounding noise, so the sign is anchored at the rightmost grid
    # point where the evaluation is still trustworthy: psi_n keeps one sign
    # between its last zero (inside the turning point) and the boundary.
    grid = np.linspace(0.0, 1.0, 801)
    vals = beta @ legendre_normalized_table(K, grid)
    for n in range(n_max + 1):
        v = vals[n]
        trusted = np.nonzero(np.abs(v) > 1e-10 * np.max(np.abs(v)))[0]
        anchor = v[trusted[-1]]
        if anchor == 0.0:
            raise ArithmeticError("sign anchor vanished for n = %d" % n)
        if anchor < 0.0:
            beta[n] *= -1.0

    root_weights = np.sqrt(np.arange(K + 1) + 0.5)
    psi1 = beta @ root_weights
    basis = PswfBasis(c=c, n_max=n_max, K=K, chi=chi, beta=beta, psi1=psi1)
    _attach_fourier_eigenvalues(basis)
    _validate(basis)
    return basis


def _bessel_logs_at(basis: PswfBasis, x: float):
    """(sign, log) of J_{k+1/2}(x) for k = 0..K."""
    signs, logabs = spherical_jn_scaled(basis.K, x)
    return signs, logabs + 0.5 * math.log(2.0 * x / math.pi)


def _alternating_series(basis: PswfBasis, n: int, x: float):
    """(sign, log, log of largest term) of
    R_n(x) = sum_k (-1)^((k-n)/2) sqrt(k+1/2) beta_k J_{k+1/2}(c x).

    Factoring the largest term keeps the sum meaningful when every
    J_{k+1/2} underflows a plain double; the largest-term log lets callers
    measure how much cancellation the alternating sum suffered.
    """
    s, g = _bessel_logs_at(basis, basis.c * x)
    k = basis.parity_indices(n)
    coeff = (-1.0) ** ((k - n) // 2) * np.sqrt(k + 0.5) * basis.beta[n, k]
    sign_t = np.sign(coeff) * s[k]
    with np.errstate(divide="ignore"):
        log_t = np.log(np.abs(coeff)) + g[k]
    finite = np.isfinite(log_t)
    if not finite.any():
        return 0.0, -np.inf, -np.inf
    top = float(np.max(log_t[finite]))
    total = float(np.sum(sign_t[finite] * np.exp(log_t[finite] - top)))
    if total == 0.0:
        return 0.0, -np.inf, top
    return math.copysign(1.0, total), top + math.log(abs(total)), top


def _mu_real_factor(basis: PswfBasis, n: int) -> float:
    """Real m_n with mu_n = i^n m_n, from cancellation-free moment identities.

    Applying the Fourier eigen-relation at the center gives
        mu_n psi_n(0)  = integral psi_n       = sqrt(2)   beta_0^n   (n even)
        mu_n psi_n'(0) = i c integral y psi_n = i c sqrt(2/3) beta_1^n (n odd)
    which involve a single Legendre coefficient each and stay accurate at
    every bandwidth, unlike sums anchored at x = 1 where psi_n(1) can be
    exponentially small.
    """
    if n % 2 == 0:
        seed = basis.beta[n, 0] if basis.K >= 0 else 0.0
        center = float(eval_inside(basis, n, 0.0))
        return (-1.0) ** (n // 2) * math.sqrt(2.0) * seed / center
    seed = basis.beta[n, 1]
    center = float(eval_derivative(basis, n, 0.0))
    return ((-1.0) ** ((n - 1) // 2) * basis.c * math.sqrt(2.0 / 3.0)
            * seed / center)


def compute_mu(basis: PswfBasis, n: int) -> complex:
    """Eigenvalue of the finite Fourier operator for psi_n (recomputed)."""
    if basis.c <= 0:
        raise ValueError("mu_n requires c > 0")
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    return complex(1j**n) * _mu_real_factor(basis, n)


# A coefficient this small carries almost no correct digits (eigenvector
# components have absolute accuracy near machine eps), so lambda_n derived
# from it is only guaranteed tiny, not accurate.
_SEED_RELIABLE = 1e-13


def _attach_fourier_eigenvalues(basis: PswfBasis) -> None:
    n_count = basis.n_max + 1
    mu = np.zeros(n_count, dtype=complex)
    lam = np.zeros(n_count)
    log_lam = np.full(n_count, -np.inf)
    log_c = math.log(basis.c / (2.0 * math.pi))
    reliable = n_count - 1
    for n in range(n_count):
        m = _mu_real_factor(basis, n)
        seed = abs(basis.beta[n, n % 2])
        if seed < _SEED_RELIABLE:
            reliable = min(reliable, n - 1)
        mu[n] = complex(1j**n) * m
        if m != 0.0:
            log_lam[n] = log_c + 2.0 * math.log(abs(m))
            lam[n] = math.exp(min(log_lam[n], 700.0))
    basis.mu = mu
    basis.lam = lam
    basis.log_lambda = log_lam
    basis.n_lambda_reliable = reliable


def _validate(basis: PswfBasis) -> None:
    n = np.arange(basis.n_max + 1, dtype=float)
    lower = n * (n + 1)
    upper = lower + basis.c**2
    slack = 1e-9 * np.maximum(1.0, np.abs(basis.chi))
    if np.any(basis.chi < lower - slack) or np.any(basis.chi > upper + slack):
        raise ArithmeticError("chi_n outside [n(n+1), n(n+1)+c^2]")
    if np.any(np.diff(basis.chi) <= 0):
        raise ArithmeticError("chi_n not strictly increasing")
    norms = np.sum(basis.beta**2, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-10:
        raise ArithmeticError("coefficient normalization broken")
    for n_i in range(basis.n_max + 1):
        off = basis.beta[n_i, (n_i % 2) ^ 1:: 2]
        if off.size and np.max(np.abs(off)) != 0.0:
            raise ArithmeticError("opposite-parity coefficients nonzero")
    # The boundary sum is rounding noise where psi_n(1) is exponentially
    # small (n far below the plateau edge at large c); assert positivity
    # only where the sum carries signal.
    meaningful = np.abs(basis.psi1) > 1e-10
    if np.any(basis.psi1[meaningful] <= 0):
        raise ArithmeticError("sign convention psi_n(1) > 0 violated")
    if basis.log_lambda is not None:
        if basis.lam[0] > 1.0 + 1e-12:
            raise ArithmeticError("lambda_0 exceeds 1")
        # strict decrease asserted in log scale within the reliable range,
        # with rounding slack for plateau eigenvalues that double precision
        # cannot separate
        hi = basis.n_lambda_reliable
        if hi is not None and hi >= 1:
            if np.any(np.diff(basis.log_lambda[: hi + 1]) > _LAMBDA_SLACK):
                raise ArithmeticError("lambda_n not decreasing")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_inside(basis: PswfBasis, n: int, x):
    """psi_n(x) for |x| <= 1 by Clenshaw summation of the Legendre series."""
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    coeff = basis.beta[n] * np.sqrt(np.arange(basis.K + 1) + 0.5)
    b1 = np.zeros_like(x_arr)
    b2 = np.zeros_like(x_arr)
    for k in range(basis.K, -1, -1):
        b1, b2 = (coeff[k] + (2 * k + 1) / (k + 1) * x_arr * b1
                  - (k + 1) / (k + 2) * b2), b1
    out = b1
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def psi_table(basis: PswfBasis, n_hi: int, x) -> np.ndarray:
    """Values psi_n(x) for n = 0..n_hi on a grid, shape (n_hi+1, len(x))."""
    if n_hi > basis.n_max:
        raise IndexError("n_hi exceeds n_max")
    table = legendre_normalized_table(basis.K, x)
    return basis.beta[: n_hi + 1] @ table


def eval_derivative(basis: PswfBasis, n: int, x):
    """psi_n'(x) for |x| < 1, term-by-term from the Legendre series."""
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) >= 1.0):
        raise ValueError("derivative defined on the open interval only")
    table = legendre_normalized_deriv_table(basis.K, x_arr)
    out = basis.beta[n] @ table
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def eval_second_derivative(basis: PswfBasis, n: int, x):
    """psi_n''(x) for |x| < 1, using the Legendre ODE for each basis term."""
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) >= 1.0):
        raise ValueError("second derivative defined on the open interval only")
    k = np.arange(basis.K + 1, dtype=float)
    p = legendre_normalized_table(basis.K, x_arr)
    dp = legendre_normalized_deriv_table(basis.K, x_arr)
    d2 = (2.0 * x_arr[None, :] * dp - (k * (k + 1))[:, None] * p) / (
        1.0 - x_arr[None, :] ** 2)
    out = basis.beta[n] @ d2
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def eval_outside(basis: PswfBasis, n: int, x):
    """Analytic extension of psi_n to |x| > 1 through the Bessel series.

    The Fourier eigen-relation with the Bessel expansion of the Legendre
    basis gives
        psi_n(x) = sqrt(2 pi / (c x)) R_n(x) / m_n,
    R_n(x) = sum_k (-1)^((k-n)/2) sqrt(k+1/2) beta_k J_{k+1/2}(c x),
    with mu_n = i^n m_n.  Scaled arithmetic keeps the series meaningful
    even when the individual Bessel values underflow.
    """
    if basis.c <= 0:
        raise ValueError("analytic extension requires c > 0")
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) <= 1.0):
        raise ValueError("use eval_inside for |x| <= 1")
    m = _mu_real_of(basis, n)
    sign_m = math.copysign(1.0, m)
    log_m = math.log(abs(m))
    out = np.empty_like(x_arr)
    for i, xi in enumerate(x_arr):
        t = abs(xi)
        sign_t, log_rt, _ = _alternating_series(basis, n, t)
        log_val = (0.5 * math.log(2.0 * math.pi / (basis.c * t))
                   + log_rt - log_m)
        val = sign_t * sign_m * math.exp(log_val) if math.isfinite(log_val) else 0.0
        if xi < 0 and n % 2 == 1:
            val = -val
        out[i] = val
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def _mu_real_of(basis: PswfBasis, n: int) -> float:
    """m_n with mu_n = i^n m_n, taken from the stored eigenvalues."""
    if basis.mu is None:
        raise ValueError("requires the Fourier eigenvalues (c > 0)")
    m = float((basis.mu[n] * (-1j) ** n).real)
    if m == 0.0:
        raise ArithmeticError(
            "mu_%d underflowed; extension unavailable this deep" % n)
    return m


def psi_outside_table(basis: PswfBasis, n_hi: int, x_points) -> np.ndarray:
    """psi_n at points with |x| > 1 for all n <= n_hi, shape (n_hi+1, len(x)).

    Shares one Bessel recurrence per evaluation point across all orders,
    which is what makes Fourier-route coefficient tables affordable.
    """
    if n_hi > basis.n_max:
        raise IndexError("n_hi exceeds n_max")
    x_points = np.atleast_1d(np.asarray(x_points, dtype=float))
    if np.any(np.abs(x_points) <= 1.0):
        raise ValueError("all points must satisfy |x| > 1")
    out = np.empty((n_hi + 1, x_points.size))
    k_all = np.arange(basis.K + 1)
    root_w = np.sqrt(k_all + 0.5)
    m_vals = np.array([_mu_real_of(basis, n) for n in range(n_hi + 1)])
    for i, xi in enumerate(x_points):
        t = abs(xi)
        s, g = _bessel_logs_at(basis, basis.c * t)
        pref = 0.5 * math.log(2.0 * math.pi / (basis.c * t))
        for n in range(n_hi + 1):
            k = basis.parity_indices(n)
            coeff = (-1.0) ** ((k - n) // 2) * root_w[k] * basis.beta[n, k]
            sign_t = np.sign(coeff) * s[k]
            with np.errstate(divide="ignore"):
                log_t = np.log(np.abs(coeff)) + g[k]
            finite = np.isfinite(log_t)
            if not finite.any():
                out[n, i] = 0.0
                continue
            top = float(np.max(log_t[finite]))
            total = float(np.sum(sign_t[finite] * np.exp(log_t[finite] - top)))
            val = 0.0
            if total != 0.0:
                log_val = (pref + top + math.log(abs(total))
                           - math.log(abs(m_vals[n])))
                if math.isfinite(log_val):
                    val = (math.copysign(1.0, total)
                           * math.copysign(1.0, m_vals[n]) * math.exp(log_val))
            if xi < 0 and n % 2 == 1:
                val = -val
            out[n, i] = val
    return out


def mu_psi_outside_table(basis: PswfBasis, n_hi: int, x_points) -> np.ndarray:
    """The products m_n psi_n(x) for |x| > 1, with mu_n = i^n m_n.

    These are the quantities entering every coefficient formula
    (a_n involves mu_n psi_n(frequency/c)), and unlike psi_n alone they
    need no division by mu_n:
        mu_n psi_n(x) = i^n sqrt(2 pi/(c x)) R_n(x),
    so they remain computable far beyond the reliability horizon of the
    eigenvalues, where they are simply tiny.
    """
    if n_hi > basis.n_max:
        raise IndexError("n_hi exceeds n_max")
    x_points = np.atleast_1d(np.asarray(x_points, dtype=float))
    if np.any(np.abs(x_points) <= 1.0):
        raise ValueError("all points must satisfy |x| > 1")
    out = np.zeros((n_hi + 1, x_points.size))
    k_all = np.arange(basis.K + 1)
    root_w = np.sqrt(k_all + 0.5)
    for i, xi in enumerate(x_points):
        t = abs(xi)
        s, g = _bessel_logs_at(basis, basis.c * t)
        pref = 0.5 * math.log(2.0 * math.pi / (basis.c * t))
        for n in range(n_hi + 1):
            k = basis.parity_indices(n)
            coeff = (-1.0) ** ((k - n) // 2) * root_w[k] * basis.beta[n, k]
            sign_t = np.sign(coeff) * s[k]
            with np.errstate(divide="ignore"):
                log_t = np.log(np.abs(coeff)) + g[k]
            finite = np.isfinite(log_t)
            if not finite.any():
                continue
            top = float(np.max(log_t[finite]))
            total = float(np.sum(sign_t[finite] * np.exp(log_t[finite] - top)))
            if total == 0.0:
                continue
            log_val = pref + top + math.log(abs(total))
            val = math.copysign(1.0, total) * math.exp(log_val)
            if xi < 0 and n % 2 == 1:
                val = -val
            out[n, i] = val
    return out


def _legendre_at_zero(k_max: int) -> np.ndarray:
    """P_k(0) for k = 0..k_max (unnormalized Legendre)."""
    vals = np.zeros(k_max + 1)
    vals[0] = 1.0
    for k in range(2, k_max + 1, 2):
        vals[k] = -(k - 1) / k * vals[k - 2]
    return vals


def derivative_at_zero(basis: PswfBasis, n: int, k: int) -> float:
    """k-th derivative of psi_n at 0 via the Taylor-coefficient recurrence
    psi^(k+2)(0) = (k(k+1) - chi_n) psi^(k)(0) + k(k-1) c^2 psi^(k-2)(0),
    seeded from the Legendre series.  Zero when k and n have opposite parity.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if n > basis.n_max:
        raise IndexError("n exceeds n_max")
    if (k - n) % 2 == 1:
        return 0.0
    p0 = _legendre_at_zero(basis.K)
    root_w = np.sqrt(np.arange(basis.K + 1) + 0.5)
    if n % 2 == 0:
        seed_lo = float(np.dot(basis.beta[n], root_w * p0))          # psi(0)
        lo_order = 0
    else:
        kk = np.arange(basis.K + 1)
        dp0 = np.zeros(basis.K + 1)
        dp0[1:] = kk[1:] * p0[:-1]
        seed_lo = float(np.dot(basis.beta[n], root_w * dp0))         # psi'(0)
        lo_order = 1
    if k == lo_order:
        return seed_lo
    d_mm = 0.0      # psi^(lo-2)(0), vacuous at the seed
    d_m = seed_lo
    c2 = basis.c**2
    for j in range(lo_order, k, 2):
        d_new = (j * (j + 1) - basis.chi[n]) * d_m + j * (j - 1) * c2 * d_mm
        d_mm, d_m = d_m, d_new
    return d_m


# ---------------------------------------------------------------------------
# Cache file (JSON)
# ---------------------------------------------------------------------------

_FORMAT_VERSION = 1


def save_basis(basis: PswfBasis, path: str | os.PathLike) -> None:
    """Write the basis as a self-describing JSON document.

    Floats are serialized by shortest round-trip repr, so a reloaded basis
    reproduces every evaluation bit for bit.
    """
    doc = {
        "format_version": _FORMAT_VERSION,
        "c": basis.c,
        "n_max": basis.n_max,
        "K": basis.K,
        "chi": basis.chi.tolist(),
        "beta": basis.beta.tolist(),
        "mu_re": None if basis.mu is None else basis.mu.real.tolist(),
        "mu_im": None if basis.mu is None else basis.mu.imag.tolist(),
        "lambda": None if basis.lam is None else basis.lam.tolist(),
        "log_lambda": (None if basis.log_lambda is None
                       else [None if not math.isfinite(v) else v
                             for v in basis.log_lambda]),
        "n_lambda_reliable": basis.n_lambda_reliable,
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f)


def load_basis(path: str | os.PathLike) -> PswfBasis:
    """Load a basis cache written by save_basis."""
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    if doc.get("format_version") != _FORMAT_VERSION:
        raise ValueError("unsupported basis cache version: %r"
                         % doc.get("format_version"))
    beta = np.asarray(doc["beta"], dtype=float)
    root_w = np.sqrt(np.arange(doc["K"] + 1) + 0.5)
    basis = PswfBasis(
        c=float(doc["c"]),
        n_max=int(doc["n_max"]),
        K=int(doc["K"]),
        chi=np.asarray(doc["chi"], dtype=float),
        beta=beta,
        psi1=beta @ root_w,
        mu=(None if doc["mu_re"] is None
            else np.asarray(doc["mu_re"]) + 1j * np.asarray(doc["mu_im"])),
        lam=None if doc["lambda"] is None else np.asarray(doc["lambda"]),
        log_lambda=(None if doc.get("log_lambda") is None
                    else np.asarray([-np.inf if v is None else v
                                     for v in doc["log_lambda"]])),
        n_lambda_reliable=doc.get("n_lambda_reliable"),
    )
    return basis
