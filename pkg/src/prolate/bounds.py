"""Explicit decay estimates for the prolate eigenvalues and coefficients.

Everything factorial-sized is computed through a shared log-Gamma so that
orders up to several hundred and bandwidths up to a few hundred never
overflow intermediate products.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .basis import PswfBasis

__all__ = [
    "log_lambda_prime",
    "lambda_prime",
    "log_lambda_envelope",
    "lambda_envelope_remark",
    "decay_onset",
    "beta_coefficient_bound",
    "truncation_order",
    "lambda_log_slope",
    "envelope_violations",
]


def log_lambda_prime(n: int, c: float) -> float:
    """log of lambda' = c^(2n+1) (n!)^4 / (2 ((2n)!)^2 Gamma(n+3/2)^2),
    the explicit factor of the classical eigenvalue factorization."""
    if c <= 0:
        raise ValueError("requires c > 0")
    if n < 0:
        raise ValueError("requires n >= 0")
    return ((2 * n + 1) * math.log(c) - math.log(2.0)
            + 4.0 * math.lgamma(n + 1) - 2.0 * math.lgamma(2 * n + 1)
            - 2.0 * math.lgamma(n + 1.5))


def lambda_prime(n: int, c: float) -> float:
    """lambda' in plain double precision (0.0 once it underflows)."""
    lg = log_lambda_prime(n, c)
    if lg > 700.0:
        return math.inf
    return math.exp(lg)


def log_lambda_envelope(n: int, c: float) -> float:
    """log of (c/2) (e c / (4 n))^(2n), the super-exponential envelope that
    the eigenvalue sequence is expected to obey from the decay onset on."""
    if n < 1:
        raise ValueError("requires n >= 1")
    return math.log(c / 2.0) + 2.0 * n * (1.0 + math.log(c / (4.0 * n)))


def lambda_envelope_remark(n: int, c: float) -> float:
    lg = log_lambda_envelope(n, c)
    if lg > 700.0:
        return math.inf
    return math.exp(lg)


def decay_onset(c: float) -> int:
    """[e c / 4], the empirical index where super-exponential decay starts."""
    return int(math.floor(math.e * c / 4.0))


def _log_mu_abs(basis: PswfBasis, n: int) -> float:
    return 0.5 * (basis.log_lambda[n]
                  - math.log(basis.c / (2.0 * math.pi)))


def beta_coefficient_bound(n: int, k: int, basis: PswfBasis):
    """(new_bound, old_bound) on |beta_k^n|.

    new_bound = (c/2)^k sqrt(pi) / (Gamma(k+3/2) |mu_n|) holds for every
    k >= 0; old_bound = 2 / (|mu_n| 2^k) is the earlier literature bound,
    defined only for k >= 2([e c] + 1) and returned as None below that.
    """
    if basis.mu is None:
        raise ValueError("bounds need the Fourier eigenvalues (c > 0)")
    log_mu = _log_mu_abs(basis, n)
    log_new = (k * math.log(basis.c / 2.0) + 0.5 * math.log(math.pi)
               - math.lgamma(k + 1.5) - log_mu)
    new_bound = math.exp(log_new) if log_new < 700.0 else math.inf
    old_bound: Optional[float] = None
    if k >= 2 * (int(math.floor(math.e * basis.c)) + 1):
        log_old = math.log(2.0) - k * math.log(2.0) - log_mu
        old_bound = math.exp(log_old) if log_old < 700.0 else math.inf
    return new_bound, old_bound


def truncation_order(c: float, s: float, norm_l2: float, norm_hs: float,
                     basis: PswfBasis) -> int:
    """Smallest N with sqrt(lambda_N) ||f||_2 <= c^(-s) ||f||_{H^s}.

    Returns n_max + 1 when no index up to n_max qualifies.
    """
    if norm_l2 <= 0 or norm_hs <= 0:
        raise ValueError("norms must be positive")
    if basis.log_lambda is None:
        raise ValueError("needs lambda_n (c > 0)")
    target = -s * math.log(c) + math.log(norm_hs) - math.log(norm_l2)
    for n in range(basis.n_max + 1):
        if 0.5 * basis.log_lambda[n] <= target:
            return n
    return basis.n_max + 1


def lambda_log_slope(basis: PswfBasis, start: Optional[int] = None,
                     stop: Optional[int] = None) -> float:
    """Least-squares slope of log lambda_n over [start, stop].

    Defaults: start = [ec/4] + 5, stop = the reliability horizon of the
    basis (beyond it the computed eigenvalues are cancellation noise).
    """
    if basis.log_lambda is None:
        raise ValueError("needs lambda_n (c > 0)")
    if start is None:
        start = decay_onset(basis.c) + 5
    if stop is None:
        stop = basis.n_lambda_reliable
    stop = min(stop, basis.n_max)
    if stop - start < 2:
        raise ValueError("fit window [%d, %d] too short" % (start, stop))
    n = np.arange(start, stop + 1)
    return float(np.polyfit(n, basis.log_lambda[start: stop + 1], 1)[0])


def envelope_violations(basis: PswfBasis, n_lo: Optional[int] = None):
    """Indices n (within the reliable range) where lambda_n exceeds the
    super-exponential envelope; expected empty from [ec/4] + 2 on."""
    if basis.log_lambda is None:
        raise ValueError("needs lambda_n (c > 0)")
    if n_lo is None:
        n_lo = decay_onset(basis.c) + 2
    hits = []
    n_hi = min(basis.n_max, basis.n_lambda_reliable)
    for n in range(max(n_lo, 1), n_hi + 1):
        env = log_lambda_envelope(n, basis.c)
        if basis.log_lambda[n] > env:
            hits.append((n, float(basis.log_lambda[n]), env))
    return hits
