"""Uniform Bessel-form (WKB) approximation of the PSWFs.

The transform x -> S_q(x) of the prolate differential equation turns it
into a perturbed Bessel equation, giving the closed-form approximant

    psi_n(x) ~ A chi_n^(1/4) sqrt(S_q(x)) J0(sqrt(chi_n) S_q(x))
               / ((1-x^2)^(1/4) (1-q x^2)^(1/4)),   q = c^2 / chi_n,

valid on [-1, 1] whenever q < 1, with the amplitude fixed exactly by the
boundary value: A = psi_n(1) / chi_n^(1/4).  The q -> 0 limit specializes
to the classical uniform Bessel approximation of Legendre polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import PswfBasis, build_basis, eval_inside
from .special import (
    PhaseIntegral,
    j0,
    legendre_normalized,
    phase_integral,
    refined_grid_max,
)

__all__ = [
    "WkbModel",
    "wkb_model",
    "wkb_eval",
    "wkb_legendre",
    "legendre_proximity",
    "wkb_residual",
    "bandwidth_for_q",
]


@dataclass(frozen=True)
class WkbModel:
    """Per-(n, c) data of the uniform approximant; requires q < 1."""

    n: int
    c: float
    chi: float
    q: float
    amplitude: float
    phase: PhaseIntegral

    def __post_init__(self):
        if not 0.0 <= self.q < 1.0:
            raise ValueError("WKB regime requires q = c^2/chi_n < 1")
        if self.amplitude <= 0.0:
            raise ValueError("amplitude must be positive")


def wkb_model(basis: PswfBasis, n: int) -> WkbModel:
    """Model for psi_n with the amplitude taken exactly from psi_n(1)."""
    chi = float(basis.chi[n])
    q = basis.c**2 / chi if chi > 0 else 0.0
    if q >= 1.0:
        raise ValueError(
            "q = %.3f >= 1 for n = %d, c = %g; no WKB regime" % (q, n, basis.c))
    amplitude = float(basis.psi1[n]) / chi**0.25
    return WkbModel(n=n, c=basis.c, chi=chi, q=q, amplitude=amplitude,
                    phase=phase_integral(q))


def wkb_eval(model: WkbModel, x):
    """Evaluate the Bessel-form approximant on [-1, 1].

    x = +-1 returns the limit A chi^(1/4) (= psi_n(1) for a basis-derived
    amplitude); negative x follows the parity of n.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(x_arr) > 1.0):
        raise ValueError("approximant defined on [-1, 1]")
    t = np.abs(x_arr)
    root_chi = math.sqrt(model.chi)
    out = np.empty_like(t)
    boundary = np.isclose(t, 1.0, rtol=0.0, atol=1e-14)
    out[boundary] = model.amplitude * model.chi**0.25
    inner = ~boundary
    if inner.any():
        s = np.array([model.phase.value(ti) for ti in t[inner]])
        envelope = (1.0 - t[inner] ** 2) ** 0.25 * (
            1.0 - model.q * t[inner] ** 2) ** 0.25
        out[inner] = (model.amplitude * model.chi**0.25 * np.sqrt(s)
                      * j0(root_chi * s) / envelope)
    if model.n % 2 == 1:
        out = np.where(x_arr < 0, -out, out)
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def wkb_legendre(n: int, x):
    """Uniform Bessel approximation of the normalized Legendre polynomial,

        sqrt(n+1/2) (arccos x / sqrt(1-x^2))^(1/2) J0((n+1/2) arccos x),

    on [0, 1], with the limit sqrt(n+1/2) at x = 1.  The scaled error is
    O(1/n) uniformly.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any((x_arr < 0.0) | (x_arr > 1.0)):
        raise ValueError("defined on [0, 1]")
    scale = math.sqrt(n + 0.5)
    out = np.empty_like(x_arr)
    near_one = 1.0 - x_arr < 1e-12
    out[near_one] = scale
    rest = ~near_one
    if rest.any():
        theta = np.arccos(x_arr[rest])
        ratio = theta / np.sqrt(1.0 - x_arr[rest] ** 2)
        out[rest] = scale * np.sqrt(ratio) * j0((n + 0.5) * theta)
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def legendre_proximity(c: float, n: int, basis: PswfBasis) -> float:
    """Grid sup of |psi_{n,c} - normalized P_n| over [-1, 1].

    Scales like c^2 / sqrt(n + 1/2) for q away from 1.
    """
    if basis.c**2 / basis.chi[n] > 0.9:
        raise ValueError("comparison needs q <= 0.9")
    return refined_grid_max(
        lambda xs: eval_inside(basis, n, xs) - legendre_normalized(n, xs))


def wkb_residual(basis: PswfBasis, n: int, size: int = 400) -> float:
    """Grid sup of |psi_n - approximant| on [-1, 1] (refined grid)."""
    model = wkb_model(basis, n)
    return refined_grid_max(
        lambda xs: eval_inside(basis, n, xs) - wkb_eval(model, xs), size=size)


def bandwidth_for_q(n: int, q: float, iterations: int = 6):
    """Find c with c^2 / chi_n(c) close to the requested q (< 1).

    Fixed-point iteration on c^2 = q chi_n(c); returns (c, basis) with the
    basis built at the final bandwidth.
    """
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    chi = n * (n + 1) / (1.0 - q)     # first guess from the two-sided bound
    c = math.sqrt(q * chi)
    basis = build_basis(c, n)
    for _ in range(iterations):
        c_new = math.sqrt(q * basis.chi[n])
        if abs(c_new - c) < 1e-9 * c_new:
            break
        c = c_new
        basis = build_basis(c, n)
    return c, basis
