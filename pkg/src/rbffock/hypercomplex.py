"""Quaternion arithmetic, the imaginary-unit sphere, and slice embeddings.

A quaternion q = w + x*i + y*j + z*k with a nonzero imaginary part sits on
exactly one slice C_I = {s + I*t : s, t real}, where I is the unit imaginary
quaternion along its vector part.  C_I is an isomorphic copy of the complex
plane, so every intrinsic function used downstream (squared-exponential
envelopes, the star exponential on a common slice) is evaluated by ordinary
complex arithmetic on the slice and re-embedded.

All values here are immutable; operations are pure functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "SlicePoint",
    "I_DEFAULT",
    "TruncationError",
    "slice_decompose",
    "embed_in_slice",
    "intrinsic_exp_sq",
    "star_exp",
]


class TruncationError(RuntimeError):
    """A truncated series did not reach its tolerance within the term cap."""


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Element w + x*i + y*j + z*k of the real quaternion algebra."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))

    @classmethod
    def from_real(cls, value: float) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    @classmethod
    def from_list(cls, items) -> "Quaternion":
        if len(items) != 4:
            raise ValueError("quaternion list form must have exactly 4 entries")
        return cls(*(float(v) for v in items))

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm_sq())

    def vec_norm(self) -> float:
        """Length of the imaginary (vector) part."""
        return math.hypot(self.x, self.y, self.z)

    def is_real(self) -> bool:
        return self.x == 0.0 and self.y == 0.0 and self.z == 0.0

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b = self, other
            return Quaternion(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented


@dataclass(frozen=True, slots=True)
class ImaginaryUnit:
    """Unit imaginary quaternion I (zero real part, |I| = 1, so I*I = -1)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        n = math.hypot(self.x, self.y, self.z)
        if abs(n - 1.0) > 1e-9:
            raise ValueError(f"imaginary unit must have norm 1, got {n!r}")

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "ImaginaryUnit":
        n = math.hypot(x, y, z)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector to an imaginary unit")
        return cls(x / n, y / n, z / n)

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ImaginaryUnit":
        if abs(q.w) > 1e-12:
            raise ValueError("imaginary unit must have zero real part")
        return cls(q.x, q.y, q.z)

    @classmethod
    def from_list(cls, items) -> "ImaginaryUnit":
        return cls.from_quaternion(Quaternion.from_list(items))

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def to_list(self) -> list[float]:
        return [0.0, self.x, self.y, self.z]


I_DEFAULT = ImaginaryUnit(1.0, 0.0, 0.0)


@dataclass(frozen=True, slots=True)
class SlicePoint:
    """Coordinates (x, y) of a quaternion x + I*y on the slice C_I.

    The canonical decomposition of a non-real quaternion has y > 0; as a
    plain coordinate container (e.g. quadrature grids) y may be any real.
    """

    x: float
    y: float
    unit: ImaginaryUnit
    degenerate: bool = False

    def to_quaternion(self) -> Quaternion:
        u = self.unit
        return Quaternion(self.x, u.x * self.y, u.y * self.y, u.z * self.y)


def slice_decompose(q: Quaternion) -> SlicePoint:
    """Write q as x + I*y with y > 0 and I a unit imaginary quaternion.

    A real quaternion lies on every slice; it is returned with y = 0, the
    default unit i, and the ``degenerate`` flag set.
    """
    v = math.hypot(q.x, q.y, q.z)
    if v == 0.0:
        return SlicePoint(q.w, 0.0, I_DEFAULT, degenerate=True)
    return SlicePoint(q.w, v, ImaginaryUnit(q.x / v, q.y / v, q.z / v))


def embed_in_slice(value: complex, unit: ImaginaryUnit) -> Quaternion:
    """Map a complex number x + iy to the quaternion x + unit*y."""
    return Quaternion(value.real, unit.x * value.imag,
                      unit.y * value.imag, unit.z * value.imag)


def intrinsic_exp_sq(gamma: float, q: Quaternion, sign: int = -1) -> Quaternion:
    """exp(sign * q**2 / gamma**2), evaluated on the slice of q.

    The result has real series coefficients (it is intrinsic), hence
    commutes with every quaternion on the same slice.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    sp = slice_decompose(q)
    zsq = complex(sp.x, sp.y) ** 2
    return embed_in_slice(cmath.exp(sign * zsq / (gamma * gamma)), sp.unit)


def star_exp(nu: float, q: Quaternion, p: Quaternion,
             tol: float = 1e-14, max_terms: int = 512) -> Quaternion:
    """Star exponential sum_n nu^n q^n conj(p)^n / n!.

    The powers of q stay to the left of the powers of conj(p); for p, q on
    a common slice this reduces to the complex exp(nu * z * conj(w)).
    Terms are accumulated with balanced sqrt(nu/n) scaling so intermediate
    powers stay finite up to |q|, |p| of order sqrt(1400/nu).

    Raises TruncationError if the term-norm stopping rule
    nu^n |q|^n |p|^n / n! < tol * |partial sum| is not met within
    ``max_terms`` terms.
    """
    if nu <= 0.0:
        raise ValueError("nu must be positive")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    total = Quaternion(1.0, 0.0, 0.0, 0.0)
    u = Quaternion(1.0, 0.0, 0.0, 0.0)
    v = Quaternion(1.0, 0.0, 0.0, 0.0)
    pbar = p.conjugate()
    qa, pa = abs(q), abs(p)
    bound = 1.0
    for n in range(1, max_terms + 1):
        s = math.sqrt(nu / n)
        u = (u * q) * s
        v = (v * pbar) * s
        total = total + u * v
        bound *= nu * qa * pa / n
        if bound < tol * abs(total):
            return total
    raise TruncationError(
        f"star exponential did not converge in {max_terms} terms "
        f"(nu={nu}, |q|={qa:.3g}, |p|={pa:.3g}, term bound {bound:.3g})")
