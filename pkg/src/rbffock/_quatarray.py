"""Vectorized quaternion arithmetic on numpy arrays of shape (..., 4).

Internal helpers used by the quadrature and function-space code.  The last
axis holds the components (w, x, y, z); slice grids are embedded from their
(x, y) coordinates and a unit imaginary quaternion.
"""

from __future__ import annotations

import math

import numpy as np

from .hypercomplex import ImaginaryUnit, Quaternion, TruncationError

ONE4 = np.array([1.0, 0.0, 0.0, 0.0])
CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


def qconst(q: Quaternion) -> np.ndarray:
    return np.array([q.w, q.x, q.y, q.z])


def to_quaternion(arr: np.ndarray) -> Quaternion:
    return Quaternion(float(arr[0]), float(arr[1]), float(arr[2]), float(arr[3]))


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise Hamilton product, broadcasting over leading axes."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def qconj(a: np.ndarray) -> np.ndarray:
    return a * CONJ_SIGNS


def qabs(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(a * a, axis=-1))


def embed_complex(re: np.ndarray, im: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Embed x + i*y arrays as quaternions x + unit*y."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    return np.stack([re, unit.x * im, unit.y * im, unit.z * im], axis=-1)


def embed_complex_arr(z: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return embed_complex(z.real, z.imag, unit)


def horner_slice(coeffs, x: np.ndarray, y: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Evaluate sum_n q^n a_n over the slice grid q = x + unit*y.

    ``coeffs`` is a sequence of Quaternion; powers of q multiply from the
    left, so the Horner recursion is acc <- a_n + q * acc.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    qg = embed_complex(x, y, unit)
    acc = np.broadcast_to(qconst(coeffs[-1]), qg.shape).copy()
    for a in reversed(coeffs[:-1]):
        acc = qmul(qg, acc)
        acc += qconst(a)
    return acc


def star_exp_grid(nu: float, x: np.ndarray, y: np.ndarray, unit: ImaginaryUnit,
                  p: Quaternion, tol: float = 1e-14,
                  max_terms: int = 512) -> np.ndarray:
    """Star exponential sum_n nu^n q^n conj(p)^n / n! over a slice grid.

    Uses one uniform truncation order for the whole grid, chosen so the
    worst-case term bound (at the largest |q| on the grid) falls below
    ``tol`` in absolute value; deterministic for a fixed grid.
    """
    if nu <= 0.0:
        raise ValueError("nu must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    qg = embed_complex(x, y, unit)
    total = np.broadcast_to(ONE4, qg.shape).copy()
    u = np.broadcast_to(ONE4, qg.shape).copy()
    v = Quaternion(1.0, 0.0, 0.0, 0.0)
    pbar = p.conjugate()
    qa_max = float(np.max(np.hypot(x, y)))
    pa = abs(p)
    bound = 1.0
    for n in range(1, max_terms + 1):
        s = math.sqrt(nu / n)
        u = qmul(u, qg) * s
        v = (v * pbar) * s
        total += qmul(u, qconst(v))
        bound *= nu * qa_max * pa / n
        if bound < tol:
            return total
    raise TruncationError(
        f"star exponential grid did not converge in {max_terms} terms "
        f"(nu={nu}, max |q|={qa_max:.3g}, |p|={pa:.3g})")
