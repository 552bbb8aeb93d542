"""PSWF spectral expansions and the associated error bounds.

Coefficients of a target function come through three interchangeable
routes: Gauss-Legendre quadrature of <f, psi_n>, the Fourier route
a_n = (mu_n/sqrt(2)) sum_k b_k psi_n(k pi / c) for periodic-type data, and
closed forms for complex exponentials and monomials.  The error metric is
the fixed 101-point grid RMS used throughout the numerical experiments,
and the bound evaluators implement the L2 estimates driven by lambda_N,
the Sobolev tail, and the almost time/band-limited decomposition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .basis import (
    PswfBasis,
    derivative_at_zero,
    eval_inside,
    eval_outside,
    psi_outside_table,
    psi_table,
)
from .special import QuadratureRule, refined_grid_max

__all__ = [
    "FunctionSpec",
    "ExpansionReport",
    "coeffs_quadrature",
    "coeff_exponential",
    "coeff_monomial",
    "coeffs_fourier",
    "truncated_sum",
    "grid_error",
    "sup_norms",
    "bound_theorem4",
    "bound_theorem5",
    "bound_prop6",
]


@dataclass
class FunctionSpec:
    """A target function for expansion.

    kind is one of "callable-sampler", "fourier-series", "corpus-member".
    Fourier data uses the orthonormal convention on [-1, 1]:
    b_k = 2^(-1/2) integral f(x) exp(-i pi k x) dx, so that
    f = 2^(-1/2) sum_k b_k exp(i pi k x) and ||f||_2^2 = sum |b_k|^2.
    fourier_k holds the integer frequencies (possibly sparse), fourier_b
    the matching coefficients for k >= 0; negative frequencies follow from
    b_{-k} = conj(b_k) for real-valued functions, which is assumed here.
    """

    kind: str
    sampler: Callable
    s: Optional[float] = None
    norm_l2: Optional[float] = None
    fourier_k: Optional[np.ndarray] = None
    fourier_b: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("callable-sampler", "fourier-series",
                             "corpus-member"):
            raise ValueError("unknown kind %r" % self.kind)
        if self.fourier_k is not None:
            self.fourier_k = np.asarray(self.fourier_k, dtype=np.int64)
            self.fourier_b = np.asarray(self.fourier_b, dtype=complex)
            if np.any(self.fourier_k < 0):
                raise ValueError("store frequencies k >= 0 only")

    def has_fourier(self) -> bool:
        return self.fourier_k is not None

    def hs_norm(self, order: Optional[float] = None) -> float:
        """Periodic Sobolev norm (1 + (k pi)^2)^(s/2)-weighted, from the
        Fourier data; includes both +k and -k contributions."""
        order = self.s if order is None else order
        k, w2 = self._two_sided()
        weight = (1.0 + (k * math.pi) ** 2) ** order
        return math.sqrt(float(np.sum(weight * w2)))

    def hs_tail_norm(self, cutoff: int, order: Optional[float] = None) -> float:
        """||f - f_[cutoff]||_{H^s}: Sobolev norm of the Fourier components
        with |k| > cutoff."""
        order = self.s if order is None else order
        k, w2 = self._two_sided()
        sel = k > cutoff
        weight = (1.0 + (k[sel] * math.pi) ** 2) ** order
        return math.sqrt(float(np.sum(weight * w2[sel])))

    def plancherel_defect(self) -> float:
        """| sum |b_k|^2 - ||f||_2^2 |, zero for complete Fourier data."""
        if not self.has_fourier() or self.norm_l2 is None:
            raise ValueError("needs Fourier data and a known L2 norm")
        _, w2 = self._two_sided()
        return abs(float(np.sum(w2)) - self.norm_l2**2)

    def _two_sided(self):
        if not self.has_fourier():
            raise ValueError("no Fourier data on %r" % (self.name or self.kind))
        k = np.abs(self.fourier_k)
        w2 = np.abs(self.fourier_b) ** 2
        doubled = np.where(k > 0, 2.0, 1.0)    # b_{-k} = conj(b_k)
        return k.astype(float), w2 * doubled


@dataclass
class ExpansionReport:
    """Result bundle of one truncated expansion."""

    coefficients: np.ndarray
    grid_err: float
    n_used: int
    c_used: float
    bound_t4: Optional[float] = None
    bound_t5: Optional[float] = None
    bound_p6: Optional[float] = None

    def to_json(self) -> str:
        doc = {
            "format_version": 1,
            "kind": "expansion_report",
            "N_used": self.n_used,
            "c_used": self.c_used,
            "grid_error": self.grid_err,
            "bound_t4": self.bound_t4,
            "bound_t5": self.bound_t5,
            "bound_p6": self.bound_p6,
            "coefficients_re": np.asarray(self.coefficients).real.tolist(),
            "coefficients_im": np.asarray(self.coefficients).imag.tolist(),
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "ExpansionReport":
        doc = json.loads(text)
        if doc.get("kind") != "expansion_report":
            raise ValueError("not an expansion report document")
        coeff = (np.asarray(doc["coefficients_re"])
                 + 1j * np.asarray(doc["coefficients_im"]))
        return cls(coefficients=coeff, grid_err=doc["grid_error"],
                   n_used=doc["N_used"], c_used=doc["c_used"],
                   bound_t4=doc["bound_t4"], bound_t5=doc["bound_t5"],
                   bound_p6=doc["bound_p6"])


# ---------------------------------------------------------------------------
# Coefficient routes
# ---------------------------------------------------------------------------

def coeffs_quadrature(f, basis: PswfBasis, N: int,
                      rule: QuadratureRule) -> np.ndarray:
    """a_n = sum_l w_l f(x_l) psi_n(x_l) for n = 0..N-1."""
    sampler = f.sampler if isinstance(f, FunctionSpec) else f
    if rule.order < max(64, N + basis.c):
        raise ValueError("quadrature order %d too small for N=%d, c=%g"
                         % (rule.order, N, basis.c))
    fvals = np.asarray(sampler(rule.nodes))
    table = psi_table(basis, N - 1, rule.nodes)
    return table @ (rule.weights * fvals)


def coeff_exponential(lam: float, basis: PswfBasis, n: int) -> complex:
    """a_n(e^{i lam x}) = mu_n psi_n(lam / c), the closed form from the
    Fourier eigen-relation; evaluates the analytic extension when the
    frequency exceeds the bandwidth."""
    if basis.c <= 0:
        raise ValueError("closed form requires c > 0")
    x = lam / basis.c
    psi = eval_inside(basis, n, x) if abs(x) <= 1.0 else eval_outside(basis, n, x)
    return basis.mu[n] * psi


def coeff_monomial(j: int, basis: PswfBasis, n: int) -> complex:
    """a_n(x^j) = (-i)^j c^(-j) mu_n psi_n^(j)(0); zero at opposite parity."""
    if basis.c <= 0:
        raise ValueError("closed form requires c > 0")
    if j < 0:
        raise ValueError("monomial degree must be >= 0")
    der = derivative_at_zero(basis, n, j)
    return (-1j) ** j * basis.c ** (-j) * basis.mu[n] * der


def coeffs_fourier(f: FunctionSpec, basis: PswfBasis, N: int) -> np.ndarray:
    """Fourier-route approximations a_n^K = (mu_n/sqrt(2)) sum_k b_k psi_n(k pi/c)
    for n = 0..N-1, using the analytic extension where |k pi / c| > 1.

    The truncation error against the exact a_n decays like the Fourier
    tail of f, o(((K+1) pi)^-(1+s)).
    """
    if basis.c <= 0:
        raise ValueError("Fourier route requires c > 0")
    if not f.has_fourier():
        raise ValueError("function carries no Fourier data")
    k = f.fourier_k
    b = f.fourier_b
    x = k * math.pi / basis.c
    inside = np.abs(x) <= 1.0
    values = np.zeros((N, k.size))
    if inside.any():
        values[:, inside] = psi_table(basis, N - 1, x[inside])
    if (~inside).any():
        values[:, ~inside] = psi_outside_table(basis, N - 1, x[~inside])
    acc = np.zeros(N, dtype=complex)
    parity = (-1.0) ** np.arange(N)
    for idx in range(k.size):
        if k[idx] == 0:
            acc += b[idx] * values[:, idx]
        else:
            # b_{-k} = conj(b_k) and psi_n(-x) = (-1)^n psi_n(x)
            acc += (b[idx] + np.conj(b[idx]) * parity) * values[:, idx]
    return basis.mu[:N] / math.sqrt(2.0) * acc


def truncated_sum(coeffs: Sequence, basis: PswfBasis, N: int, x):
    """S_N f(x) = sum_{n < N} a_n psi_n(x) for |x| <= 1."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) > 1.0):
        raise ValueError("partial sums evaluated on [-1, 1] only")
    coeffs = np.asarray(coeffs)
    if N > len(coeffs):
        raise ValueError("N exceeds the number of coefficients")
    if N == 0:
        out = np.zeros(x_arr.size, dtype=coeffs.dtype)
    else:
        out = coeffs[:N] @ psi_table(basis, N - 1, x_arr)
    return out[0] if np.asarray(x).ndim == 0 else out


_ERROR_GRID = np.arange(-50, 51) / 50.0


def grid_error(f, approx) -> float:
    """[(1/50) sum_{k=-50}^{50} |f(k/50) - approx(k/50)|^2]^(1/2),
    the fixed 101-point RMS metric of the numerical experiments."""
    fv = np.asarray(f(_ERROR_GRID))
    av = np.asarray(approx(_ERROR_GRID))
    return math.sqrt(float(np.sum(np.abs(fv - av) ** 2)) / 50.0)


# ---------------------------------------------------------------------------
# Error bounds
# ---------------------------------------------------------------------------

def sup_norms(basis: PswfBasis, n_hi: int) -> np.ndarray:
    """Grid sup norms ||psi_n||_inf for n = 0..n_hi (800-point refined grid;
    the envelope grows like chi_n^(1/4), smooth enough for a grid sup)."""
    out = np.empty(n_hi + 1)
    for n in range(n_hi + 1):
        out[n] = refined_grid_max(lambda xs: eval_inside(basis, n, xs),
                                  size=800)
    return out


def bound_theorem4(c: float, N: int, s: float, norm_l2: float, norm_hs: float,
                   basis: PswfBasis, k_const: float = 1.0) -> float:
    """L2 truncation bound K (1+c^2)^(-s/2) ||f||_{H^s} + K sqrt(lambda_N) ||f||_2.

    k_const = 1 is valid for functions vanishing at the endpoints (H^s_0);
    for general H^s it absorbs the extension-operator norm.
    """
    if basis.lam is None:
        raise ValueError("needs lambda_N (c > 0)")
    if N > basis.n_max:
        raise IndexError("lambda_N not available; raise n_max")
    return (k_const * (1.0 + c * c) ** (-s / 2.0) * norm_hs
            + k_const * math.sqrt(basis.lam[N]) * norm_l2)


def bound_theorem5(c: float, N: int, s: float, norm_l2: float,
                   norm_hs_tail: float, basis: PswfBasis,
                   supnorms: np.ndarray) -> float:
    """Periodic-route bound
    sqrt((1/2 + pi/(4c)) sum_{n >= N} ||psi_n||_inf^2 lambda_n) ||f||_2
        + c^(-s) ||f - f_[c/pi]||_{H^s}.

    Requires the lambda tail at n_max to be negligible so the finite sum
    stands in for the infinite one.
    """
    if basis.lam is None:
        raise ValueError("needs lambda_n (c > 0)")
    supnorms = np.asarray(supnorms)
    if supnorms.size < basis.n_max + 1:
        raise ValueError("supnorms must cover n = 0..n_max")
    if basis.lam[basis.n_max] > 1e-18:
        raise ValueError("lambda tail %.3e at n_max=%d not negligible; "
                         "build a larger basis"
                         % (basis.lam[basis.n_max], basis.n_max))
    tail = float(np.sum(supnorms[N: basis.n_max + 1] ** 2
                        * basis.lam[N: basis.n_max + 1]))
    return (math.sqrt((0.5 + math.pi / (4.0 * c)) * tail) * norm_l2
            + c ** (-s) * norm_hs_tail)


def bound_prop6(eps_t: float, eps_omega: float, lambda_n: float) -> float:
    """eps_T + eps_Omega + sqrt(lambda_N): the almost time- and band-limited
    approximation bound."""
    if eps_t < 0 or eps_omega < 0 or lambda_n < 0:
        raise ValueError("inputs must be nonnegative")
    return eps_t + eps_omega + math.sqrt(lambda_n)
