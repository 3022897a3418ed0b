"""Truncated power series: one quaternionic variable and d complex variables.

Quaternionic series carry right coefficients, f(q) = sum_n q^n a_n, the
form preserved by slice-regular function theory.  Multiplication is only
defined when the left factor has real (intrinsic) coefficients; that is the
one case in which coefficients slide past powers of q.

``GaussSeries`` is the factored form exp(-q^2/gamma^2) * (power series).
Elements of the Gaussian RBF spaces must be handled in this form: the
envelope is what makes their norm integrals Gaussian-weighted, and the
multiplication operator that maps them onto the Fock side simply strips it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _quatarray as qa
from .hypercomplex import ImaginaryUnit, Quaternion, intrinsic_exp_sq

__all__ = [
    "DEGREE_CAP",
    "QPowerSeries",
    "GaussSeries",
    "CPowerSeries",
    "GaussCSeries",
    "multi_indices",
    "multi_order",
    "multi_factorial",
    "cauchy_mul",
    "beta_coeffs",
    "sequential_norm",
]

# Everything in scope is entire with factorially decaying coefficients, so a
# dense representation with a modest degree cap is enough.
DEGREE_CAP = 64

_ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion.from_real(value)
    raise TypeError(f"cannot use {type(value).__name__} as a series coefficient")


@dataclass(frozen=True)
class QPowerSeries:
    """Polynomial q |-> sum_n q^n a_n with right quaternionic coefficients."""

    coeffs: tuple[Quaternion, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs",
                           tuple(_as_quaternion(c) for c in self.coeffs))
        if not self.coeffs:
            object.__setattr__(self, "coeffs", (_ZERO,))

    @classmethod
    def monomial(cls, degree: int, coeff=1.0) -> "QPowerSeries":
        return cls((_ZERO,) * degree + (_as_quaternion(coeff),))

    @classmethod
    def exp_sq(cls, gamma: float, sign: int = 1, degree: int = DEGREE_CAP) -> "QPowerSeries":
        """Series of exp(sign * q^2 / gamma^2) up to the given degree."""
        if gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        coeffs = [_ZERO] * (degree + 1)
        c = 1.0
        coeffs[0] = Quaternion.from_real(1.0)
        for m in range(1, degree // 2 + 1):
            c *= sign / (gamma * gamma * m)
            coeffs[2 * m] = Quaternion.from_real(c)
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Quaternion:
        return self.coeffs[n] if n < len(self.coeffs) else _ZERO

    def has_real_coeffs(self) -> bool:
        return all(c.x == 0.0 and c.y == 0.0 and c.z == 0.0 for c in self.coeffs)

    def truncated(self, degree: int) -> "QPowerSeries":
        return QPowerSeries(self.coeffs[:degree + 1])

    def eval(self, q: Quaternion) -> Quaternion:
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = a + q * acc
        return acc

    def eval_slice_grid(self, x, y, unit: ImaginaryUnit) -> np.ndarray:
        """Values over the slice grid q = x + unit*y, shape (..., 4)."""
        return qa.horner_slice(self.coeffs, x, y, unit)

    def to_json(self) -> dict:
        return {"coeffs": [c.to_list() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "QPowerSeries":
        return cls(tuple(Quaternion.from_list(c) for c in data["coeffs"]))


@dataclass(frozen=True)
class GaussSeries:
    """Factored function q |-> exp(-q^2/gamma^2) * series(q)."""

    gamma: float
    series: QPowerSeries

    def __post_init__(self) -> None:
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")

    @property
    def degree(self) -> int:
        return self.series.degree

    def eval(self, q: Quaternion) -> Quaternion:
        return intrinsic_exp_sq(self.gamma, q, -1) * self.series.eval(q)

    def eval_slice_grid(self, x, y, unit: ImaginaryUnit) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        z = x + 1j * y
        env = np.exp(-(z * z) / (self.gamma * self.gamma))
        env4 = qa.embed_complex_arr(env, unit)
        return qa.qmul(env4, self.series.eval_slice_grid(x, y, unit))

    def to_json(self) -> dict:
        return {"gamma": self.gamma, "coeffs": [c.to_list() for c in self.series.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "GaussSeries":
        return cls(float(data["gamma"]), QPowerSeries.from_json(data))


# ---------------------------------------------------------------------------
# multi-index helpers (plain tuples of non-negative ints)

def multi_order(index: Sequence[int]) -> int:
    return int(sum(index))


def multi_factorial(index: Sequence[int]) -> int:
    out = 1
    for n in index:
        out *= math.factorial(n)
    return out


def multi_indices(dim: int, max_order: int) -> Iterator[tuple[int, ...]]:
    """All indices of length ``dim`` with |n| <= max_order, graded order."""
    def gen(order, d):
        if d == 1:
            yield (order,)
            return
        for first in range(order, -1, -1):
            for rest in gen(order - first, d - 1):
                yield (first,) + rest

    for order in range(max_order + 1):
        yield from gen(order, dim)


@dataclass(frozen=True)
class CPowerSeries:
    """Series z |-> sum_n z^n c_n over C^d in multi-index notation."""

    dim: int
    terms: tuple[tuple[tuple[int, ...], complex], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        cleaned = []
        for index, coeff in self.terms:
            index = tuple(int(n) for n in index)
            if len(index) != self.dim or any(n < 0 for n in index):
                raise ValueError(f"bad multi-index {index} for dimension {self.dim}")
            cleaned.append((index, complex(coeff)))
        cleaned.sort(key=lambda t: (multi_order(t[0]), t[0]))
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def from_dict(cls, dim: int, coeffs: dict) -> "CPowerSeries":
        return cls(dim, tuple(coeffs.items()))

    @property
    def max_axis_degree(self) -> int:
        return max((max(idx) for idx, _ in self.terms), default=0)

    @property
    def degree(self) -> int:
        return max((multi_order(idx) for idx, _ in self.terms), default=0)

    def eval(self, z: Sequence[complex]) -> complex:
        z = tuple(z)
        total = 0.0 + 0.0j
        for index, coeff in self.terms:
            p = coeff
            for zl, nl in zip(z, index):
                p *= zl ** nl
            total += p
        return total

    def eval_points(self, zpts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at points of shape (npoints, dim)."""
        zpts = np.asarray(zpts, dtype=complex)
        total = np.zeros(zpts.shape[0], dtype=complex)
        for index, coeff in self.terms:
            p = np.full(zpts.shape[0], coeff, dtype=complex)
            for axis, nl in enumerate(index):
                if nl:
                    p *= zpts[:, axis] ** nl
            total += p
        return total


@dataclass(frozen=True)
class GaussCSeries:
    """Factored function z |-> exp(-z^2/gamma^2) * series(z), z^2 = sum z_l^2."""

    gamma: float
    series: CPowerSeries

    def __post_init__(self) -> None:
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")

    @property
    def dim(self) -> int:
        return self.series.dim

    def eval(self, z: Sequence[complex]) -> complex:
        zsq = sum(zl * zl for zl in z)
        return complex(np.exp(-zsq / (self.gamma * self.gamma))) * self.series.eval(z)

    def eval_points(self, zpts: np.ndarray) -> np.ndarray:
        zpts = np.asarray(zpts, dtype=complex)
        zsq = np.sum(zpts * zpts, axis=1)
        return np.exp(-zsq / (self.gamma * self.gamma)) * self.series.eval_points(zpts)


# ---------------------------------------------------------------------------
# coefficient maps

def cauchy_mul(f: QPowerSeries, g: QPowerSeries,
               max_degree: int | None = None) -> QPowerSeries:
    """Cauchy product of an intrinsic series f with a general series g.

    Requires f to have real coefficients: only then do its coefficients
    commute past the powers of q, making (sum q^j s_j)(sum q^m a_m) equal
    to sum_k q^k sum_j s_j a_{k-j}.
    """
    if not f.has_real_coeffs():
        raise ValueError("left factor must have real (intrinsic) coefficients")
    out_degree = f.degree + g.degree
    if max_degree is not None:
        out_degree = min(out_degree, max_degree)
    s = [c.w for c in f.coeffs]
    out = []
    for k in range(out_degree + 1):
        acc = _ZERO
        for j in range(max(0, k - g.degree), min(k, f.degree) + 1):
            if s[j] != 0.0:
                acc = acc + g.coeffs[k - j] * s[j]
        out.append(acc)
    return QPowerSeries(tuple(out))


def beta_coeffs(gamma: float, coeffs: Sequence[Quaternion], k_max: int,
                sign: int = 1) -> tuple[Quaternion, ...]:
    """Coefficients of exp(sign * q^2/gamma^2) * f for f = sum q^n a_n.

    beta_k = sum_{j=0..floor(k/2)} sign^j * a_{k-2j} / (gamma^{2j} j!),
    each a finite exact sum; indices of ``coeffs`` beyond its length count
    as zero.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    a = [_as_quaternion(c) for c in coeffs]
    out = []
    g2 = gamma * gamma
    for k in range(k_max + 1):
        acc = _ZERO
        w = 1.0
        for j in range(k // 2 + 1):
            if j > 0:
                w *= sign / (g2 * j)
            n = k - 2 * j
            if n < len(a):
                acc = acc + a[n] * w
        out.append(acc)
    return tuple(out)


def sequential_norm(gamma: float, coeffs: Sequence[Quaternion], k_max: int) -> float:
    """Partial sum sum_{k<=k_max} (k! gamma^{2k} / 2^k) |beta_k|^2.

    This is the squared RBF-space norm of sum q^n a_n in the limit
    k_max -> infinity.  The factorial weight switches to a log-gamma form
    past k = 30 to avoid overflow.
    """
    betas = beta_coeffs(gamma, coeffs, k_max)
    lg = 2.0 * math.log(gamma) - math.log(2.0)
    parts = []
    for k, b in enumerate(betas):
        if k <= 30:
            weight = math.factorial(k) * gamma ** (2 * k) / 2.0 ** k
        else:
            weight = math.exp(math.lgamma(k + 1) + k * lg)
        parts.append(weight * b.norm_sq())
    return math.fsum(parts)
