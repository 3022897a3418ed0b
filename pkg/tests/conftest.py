import numpy as np

from rbffock import Quaternion


def assert_qclose(actual: Quaternion, expected: Quaternion, tol: float = 1e-12):
    __tracebackhide__ = True
    err = abs(actual - expected)
    scale = 1.0 + abs(expected)
    assert err <= tol * scale, (
        f"quaternions differ by {err:.3e} (tol {tol:.1e} * {scale:.3e}):\n"
        f"  actual   {actual}\n  expected {expected}")


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion(*(scale * rng.uniform(-1.0, 1.0, 4)))
