"""Orthogonal families: weighted Hermite functions and Gaussian RBF bases.

Conventions pinned here (and verified by quadrature in the test suite):

* h_n(x; nu) = nu^{n/2} H_n(sqrt(nu) x), the Rodrigues-type family
  (-1)^n exp(nu x^2) d^n/dx^n exp(-nu x^2).  Its squared norm against the
  weight exp(-nu x^2) dx is 2^n nu^n n! sqrt(pi/nu).
* psi_n(x; nu) = h_n(x; nu) exp(-nu x^2 / 2) / sqrt(2^n nu^n n! sqrt(pi/nu)),
  orthonormal in plain L^2(R, dx).
* e_n(q; gamma) = sqrt(2^n / (gamma^{2n} n!)) q^n exp(-q^2/gamma^2), the
  orthonormal basis of the Gaussian RBF space; in d complex variables the
  multi-index version factorizes coordinatewise.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .hypercomplex import Quaternion, embed_in_slice, slice_decompose
from .series import (CPowerSeries, GaussCSeries, GaussSeries, QPowerSeries,
                     multi_factorial, multi_order)

__all__ = [
    "hermite_h",
    "hermite_psi",
    "hermite_psi_all",
    "rbf_basis_coeff",
    "rbf_basis_c",
    "rbf_basis_q",
    "rbf_basis_d",
    "rbf_basis_series",
    "rbf_basis_series_d",
]

MAX_HERMITE_ORDER = 64


def _check_hermite_args(nu: float, n: int) -> None:
    if nu <= 0.0:
        raise ValueError("nu must be positive")
    if not 0 <= n <= MAX_HERMITE_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_HERMITE_ORDER}]")


def hermite_h(nu: float, n: int, x):
    """Weighted Hermite polynomial nu^{n/2} H_n(sqrt(nu) x).

    Three-term recurrence h_{k+1} = 2 nu x h_k - 2 k nu h_{k-1}; vectorized
    over x.
    """
    _check_hermite_args(nu, n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * nu * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * nu * x * h - 2.0 * k * nu * h_prev
    return h if h.ndim else float(h)


def hermite_psi_all(nu: float, n_max: int, x) -> np.ndarray:
    """All normalized weighted Hermite functions psi_0 .. psi_{n_max} at x.

    Returns an array of shape (n_max + 1,) + shape(x).  Uses the
    normalized recurrence, which keeps every row O(1) in magnitude.
    """
    _check_hermite_args(nu, n_max)
    x = np.asarray(x, dtype=float)
    u = math.sqrt(nu) * x
    out = np.empty((n_max + 1,) + x.shape)
    scale = (nu / math.pi) ** 0.25
    out[0] = scale * np.exp(-u * u / 2.0)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * u * out[0]
    for k in range(1, n_max):
        out[k + 1] = (math.sqrt(2.0 / (k + 1)) * u * out[k]
                      - math.sqrt(k / (k + 1)) * out[k - 1])
    return out


def hermite_psi(nu: float, n: int, x):
    """Normalized weighted Hermite function, orthonormal in L^2(R, dx)."""
    vals = hermite_psi_all(nu, n, x)[n]
    return vals if np.ndim(vals) else float(vals)


def rbf_basis_coeff(gamma: float, n: int) -> float:
    """Normalization sqrt(2^n / (gamma^{2n} n!)), computed in log space."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    return math.exp(0.5 * (n * math.log(2.0) - 2.0 * n * math.log(gamma)
                           - math.lgamma(n + 1)))


def rbf_basis_c(gamma: float, n: int, z: complex) -> complex:
    """Orthonormal RBF basis element in one complex variable."""
    return rbf_basis_coeff(gamma, n) * z ** n * cmath.exp(-z * z / (gamma * gamma))


def rbf_basis_q(gamma: float, n: int, q: Quaternion) -> Quaternion:
    """Orthonormal RBF basis element at a quaternion argument.

    Intrinsic (real coefficients), so the monomial and the Gaussian
    envelope commute; evaluated by complex arithmetic on the slice of q.
    """
    sp = slice_decompose(q)
    return embed_in_slice(rbf_basis_c(gamma, n, complex(sp.x, sp.y)), sp.unit)


def rbf_basis_d(gamma: float, index: Sequence[int], z: Sequence[complex]) -> complex:
    """Multi-index RBF basis element on C^d as the product of 1-D factors."""
    if len(index) != len(z):
        raise ValueError(f"index length {len(index)} != point dimension {len(z)}")
    out = 1.0 + 0.0j
    for nl, zl in zip(index, z):
        out *= rbf_basis_c(gamma, nl, complex(zl))
    return out


def rbf_basis_series(gamma: float, n: int) -> GaussSeries:
    """e_n as a Gaussian-enveloped monomial, the form the spaces consume."""
    return GaussSeries(gamma, QPowerSeries.monomial(n, rbf_basis_coeff(gamma, n)))


def rbf_basis_series_d(gamma: float, index: Sequence[int]) -> GaussCSeries:
    index = tuple(int(n) for n in index)
    c = math.exp(0.5 * (multi_order(index) * math.log(2.0)
                        - 2.0 * multi_order(index) * math.log(gamma)
                        - math.log(multi_factorial(index))))
    return GaussCSeries(gamma, CPowerSeries(len(index), ((index, c),)))
