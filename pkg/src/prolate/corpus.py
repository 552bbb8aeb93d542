"""Test-function corpus: Weierstrass sums, Brownian-type cosine series,
complex exponentials, and monomials, packaged as FunctionSpec objects with
their Fourier data and closed-form norms where those exist.
"""

from __future__ import annotations

import math

import numpy as np

from .basis import PswfBasis, eval_inside, eval_outside
from .special import bessel_j_half_all
from .spectral import FunctionSpec

__all__ = [
    "weierstrass",
    "brownian",
    "exponential",
    "monomial",
    "exponential_legendre_coeff",
    "exponential_legendre_tail",
    "exponential_pswf_tail",
    "from_name",
]


def weierstrass(s: float, periodic: bool = False, k_cut: int = 60) -> FunctionSpec:
    """W_s(x) = sum_{k >= 0} cos(2^k x) / 2^{ks} (or cos(2^k pi x) for the
    periodic variant), truncated at k_cut with geometric tail <= 2^(-k_cut s).

    The periodic variant carries exact Fourier data at the frequencies 2^k
    and the closed-form L2 norm (1 - 2^(-2s))^(-1/2); it lies in H^t for
    every t < s but not in H^s itself.
    """
    if s <= 0:
        raise ValueError("regularity s must be positive")
    j = np.arange(k_cut + 1)
    amps = 2.0 ** (-s * j)
    omega = 2.0 ** j * (math.pi if periodic else 1.0)

    def sampler(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return (amps[None, :] @ np.cos(np.outer(omega, x))).ravel()

    if periodic:
        return FunctionSpec(
            kind="corpus-member",
            sampler=sampler,
            s=s,
            norm_l2=(1.0 - 2.0 ** (-2.0 * s)) ** -0.5,
            fourier_k=(2 ** j.astype(np.int64)),
            fourier_b=amps / math.sqrt(2.0),
            name="weierstrass:s=%g:periodic" % s,
        )
    return FunctionSpec(kind="corpus-member", sampler=sampler, s=s,
                        name="weierstrass:s=%g" % s)


def brownian(s: float, seed: int, k_max: int = 500) -> FunctionSpec:
    """B_s(x) = sum_{k >= 1} X_k k^(-s) cos(k pi x) with X_k standard normal.

    Deterministic given the seed: the X_k are drawn from numpy's PCG64
    generator (numpy.random.default_rng(seed)), which is part of the
    reproducibility contract.  Lies in H^t for t < s - 1/2 almost surely.
    """
    if s <= 0:
        raise ValueError("regularity s must be positive")
    rng = np.random.default_rng(seed)
    x_k = rng.standard_normal(k_max)
    k = np.arange(1, k_max + 1)
    amps = x_k * k ** (-float(s))

    def sampler(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return (amps[None, :] @ np.cos(math.pi * np.outer(k, x))).ravel()

    return FunctionSpec(
        kind="corpus-member",
        sampler=sampler,
        s=s,
        norm_l2=math.sqrt(float(np.sum(amps**2))),
        fourier_k=k.astype(np.int64),
        fourier_b=amps / math.sqrt(2.0),
        name="brownian:s=%g:seed=%d" % (s, seed),
    )


def exponential(lam: float) -> FunctionSpec:
    """f(x) = exp(i lam x) on [-1, 1]; unit modulus, so ||f||_2 = sqrt(2)."""

    def sampler(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.exp(1j * lam * x)

    return FunctionSpec(kind="corpus-member", sampler=sampler,
                        norm_l2=math.sqrt(2.0),
                        name="exponential:lambda=%g" % lam)


def monomial(j: int) -> FunctionSpec:
    """f(x) = x^j; ||f||_2 = sqrt(2/(2j+1))."""
    if j < 0:
        raise ValueError("degree must be >= 0")

    def sampler(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return x ** j

    return FunctionSpec(kind="corpus-member", sampler=sampler,
                        norm_l2=math.sqrt(2.0 / (2 * j + 1)),
                        name="monomial:j=%d" % j)


# ---------------------------------------------------------------------------
# Closed forms for the exponential's expansions
# ---------------------------------------------------------------------------

def exponential_legendre_coeff(lam: float, n: int) -> complex:
    """Coefficient of exp(i lam x) in the orthonormal Legendre basis:
    alpha_n = i^n sqrt(n+1/2) sqrt(2 pi / lam) J_{n+1/2}(lam)."""
    if lam <= 0:
        raise ValueError("frequency must be positive")
    j = bessel_j_half_all(n, lam)[n]
    return ((1j) ** n * math.sqrt(n + 0.5)
            * math.sqrt(2.0 * math.pi / lam) * j)


def exponential_legendre_tail(lam: float, n_keep: int, real_part: bool = False,
                              extra: int = 200) -> float:
    """Exact L2 error of the Legendre expansion keeping orders n < n_keep:
    sqrt((2 pi / lam) sum_{n >= n_keep} (n+1/2) J_{n+1/2}(lam)^2).

    With real_part=True the target is cos(lam x) instead of the complex
    exponential, which drops the odd-order terms.  The summand dies
    super-exponentially once n exceeds lam, so `extra` terms beyond the
    truncation capture the whole tail.
    """
    n_hi = n_keep + extra + int(lam)
    j = bessel_j_half_all(n_hi, lam)
    n = np.arange(n_hi + 1)
    sel = n >= n_keep
    if real_part:
        sel &= n % 2 == 0
    tail = float(np.sum((n[sel] + 0.5) * j[sel] ** 2))
    return math.sqrt(2.0 * math.pi / lam * tail)


def exponential_pswf_tail(basis: PswfBasis, lam: float, n_keep: int,
                          real_part: bool = False) -> float:
    """L2 error of the PSWF expansion of exp(i lam x) keeping n < n_keep:
    sqrt(sum_{n >= n_keep} |mu_n psi_n(lam/c)|^2), summed to n_max.

    real_part=True targets cos(lam x) (even orders only).
    """
    if basis.mu is None:
        raise ValueError("requires c > 0")
    x = lam / basis.c
    total = 0.0
    for n in range(n_keep, basis.n_max + 1):
        if real_part and n % 2 == 1:
            continue
        psi = (eval_inside(basis, n, x) if abs(x) <= 1.0
               else eval_outside(basis, n, x))
        total += abs(basis.mu[n]) ** 2 * psi**2
    return math.sqrt(total)


# ---------------------------------------------------------------------------
# Name-based lookup (CLI addressing)
# ---------------------------------------------------------------------------

def from_name(text: str, default_seed: int = 1) -> FunctionSpec:
    """Build a corpus member from a compact name, e.g.
    "weierstrass:s=1.4:periodic", "brownian:s=1:seed=7",
    "exponential:lambda=50", "monomial:j=3"."""
    parts = text.split(":")
    head, args = parts[0], parts[1:]
    kw = {}
    flags = set()
    for a in args:
        if "=" in a:
            key, val = a.split("=", 1)
            kw[key] = val
        else:
            flags.add(a)
    if head == "weierstrass":
        return weierstrass(float(kw["s"]), periodic="periodic" in flags,
                           k_cut=int(kw.get("k_cut", 60)))
    if head == "brownian":
        return brownian(float(kw["s"]), seed=int(kw.get("seed", default_seed)),
                        k_max=int(kw.get("k_max", 500)))
    if head == "exponential":
        return exponential(float(kw["lambda"]))
    if head == "monomial":
        return monomial(int(kw["j"]))
    raise ValueError("unknown corpus member %r" % head)
