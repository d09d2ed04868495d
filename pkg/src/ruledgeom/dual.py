"""Dual-number and dual-vector arithmetic.

A dual scalar is a + eps*b with eps^2 = 0; a dual vector is a pair of real
3-vectors (v, v*).  Dual unit vectors encode oriented lines: the real part
is the line direction, the dual part its moment about the origin.  All
operations accept either plain floats / (3,) arrays or numpy arrays of
shape (N,) / (N, 3), broadcasting elementwise, so a whole sample grid can
be pushed through the algebra at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainError, PureDualDivisor, PureDualVector

# Real parts smaller than this are treated as exactly zero (non-invertible).
PURE_EPS = 1e-14

# Below this sine magnitude a line pair counts as parallel and the dual
# angle's distance part is taken from the moment difference instead.
PARALLEL_SIN_EPS = 1e-9

Scalar = Union[float, np.ndarray]


@dataclass(frozen=True)
class DualScalar:
    """a + eps*b. Fields may be floats or broadcast-compatible arrays."""

    real: Scalar
    dual: Scalar

    def __add__(self, other: "DualScalar | float") -> "DualScalar":
        other = _as_dual(other)
        return DualScalar(self.real + other.real, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other: "DualScalar | float") -> "DualScalar":
        other = _as_dual(other)
        return DualScalar(self.real - other.real, self.dual - other.dual)

    def __rsub__(self, other: "DualScalar | float") -> "DualScalar":
        return _as_dual(other) - self

    def __neg__(self) -> "DualScalar":
        return DualScalar(-self.real, -self.dual)

    def __mul__(self, other: "DualScalar | float") -> "DualScalar":
        return dual_mul(self, _as_dual(other))

    __rmul__ = __mul__

    def __truediv__(self, other: "DualScalar | float") -> "DualScalar":
        return dual_div(self, _as_dual(other))

    def __rtruediv__(self, other: "DualScalar | float") -> "DualScalar":
        return dual_div(_as_dual(other), self)


def _as_dual(x) -> DualScalar:
    if isinstance(x, DualScalar):
        return x
    return DualScalar(np.asarray(x, dtype=float) if np.ndim(x) else float(x), 0.0)


def dual_mul(a: DualScalar, b: DualScalar) -> DualScalar:
    """Product with eps^2 = 0: dual part never sees a.dual*b.dual."""
    return DualScalar(a.real * b.real, a.real * b.dual + a.dual * b.real)


def dual_div(a: DualScalar, b: DualScalar) -> DualScalar:
    """Inverse of dual_mul; requires an invertible divisor."""
    if np.any(np.abs(b.real) < PURE_EPS):
        raise PureDualDivisor("divisor has (numerically) zero real part")
    return DualScalar(a.real / b.real,
                      (a.dual * b.real - a.real * b.dual) / (b.real * b.real))


def lift(f: Callable, fprime: Callable, x: DualScalar) -> DualScalar:
    """Extend a differentiable real function to dual arguments:
    f(a + eps*b) = f(a) + eps*b*f'(a)."""
    return DualScalar(f(x.real), x.dual * fprime(x.real))


def dual_cos(x: DualScalar) -> DualScalar:
    return DualScalar(np.cos(x.real), -x.dual * np.sin(x.real))


def dual_sin(x: DualScalar) -> DualScalar:
    return DualScalar(np.sin(x.real), x.dual * np.cos(x.real))


def dual_sqrt(x: DualScalar) -> DualScalar:
    if np.any(np.asarray(x.real) <= 0.0):
        raise DomainError("dual_sqrt requires a positive real part")
    r = np.sqrt(x.real)
    return DualScalar(r, x.dual / (2.0 * r))


@dataclass(frozen=True)
class DualVector:
    """Pair of real 3-vectors (or (N, 3) arrays): direction part + moment part."""

    real: np.ndarray
    dual: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "real", np.asarray(self.real, dtype=float))
        object.__setattr__(self, "dual", np.asarray(self.dual, dtype=float))

    def __add__(self, other: "DualVector") -> "DualVector":
        return DualVector(self.real + other.real, self.dual + other.dual)

    def __sub__(self, other: "DualVector") -> "DualVector":
        return DualVector(self.real - other.real, self.dual - other.dual)

    def __neg__(self) -> "DualVector":
        return DualVector(-self.real, -self.dual)

    def scale(self, s: DualScalar) -> "DualVector":
        """Multiply by a dual scalar (broadcast over trailing xyz axis)."""
        sr = _col(s.real)
        sd = _col(s.dual)
        return DualVector(sr * self.real, sr * self.dual + sd * self.real)

    def __mul__(self, s) -> "DualVector":
        return self.scale(_as_dual(s))

    __rmul__ = __mul__


def _col(x):
    """Shape a scalar field for broadcasting against (..., 3) vectors."""
    x = np.asarray(x, dtype=float)
    return x[..., None] if x.ndim else x


def _dot3(u: np.ndarray, v: np.ndarray):
    return np.sum(u * v, axis=-1)


def dual_dot(a: DualVector, b: DualVector) -> DualScalar:
    """Dual scalar product: real <a,b>, dual <a,b*> + <a*,b>."""
    return DualScalar(_dot3(a.real, b.real),
                      _dot3(a.real, b.dual) + _dot3(a.dual, b.real))


def dual_cross(a: DualVector, b: DualVector) -> DualVector:
    """Dual cross product: real a x b, dual a x b* + a* x b."""
    return DualVector(np.cross(a.real, b.real),
                      np.cross(a.real, b.dual) + np.cross(a.dual, b.real))


def dual_norm(a: DualVector) -> DualScalar:
    """|a| + eps <a, a*>/|a|; undefined for a vanishing real part."""
    n = np.linalg.norm(a.real, axis=-1)
    if np.any(n < PURE_EPS):
        raise PureDualVector("dual vector has (numerically) zero real part")
    return DualScalar(n, _dot3(a.real, a.dual) / n)


def dual_normalize(a: DualVector) -> DualVector:
    """Rescale so the dual norm is exactly 1 + eps*0."""
    n = dual_norm(a)
    nr = _col(n.real)
    nd = _col(n.dual)
    # v / (n + eps n*) expanded with eps^2 = 0
    return DualVector(a.real / nr, a.dual / nr - a.real * nd / (nr * nr))


@dataclass(frozen=True)
class DualAngle:
    """theta + eps*theta_star between two oriented lines: theta is the real
    angle, theta_star the (signed) offset along the common perpendicular."""

    theta: Scalar
    theta_star: Scalar

    def as_scalar(self) -> DualScalar:
        return DualScalar(self.theta, self.theta_star)

    def sin(self) -> DualScalar:
        return dual_sin(self.as_scalar())

    def cos(self) -> DualScalar:
        return dual_cos(self.as_scalar())


def dual_angle(a: DualVector, b: DualVector) -> DualAngle:
    """Dual angle between two dual unit vectors (oriented lines).

    theta is recovered from atan2 of the dual sine (norm of the dual cross
    product) and dual cosine (dual dot), which keeps theta in [0, pi] and
    the extraction stable near 0 and pi.  For (near-)parallel directions
    the sine route is singular, so theta snaps to 0 or pi and theta_star
    falls back to the distance between the parallel lines, which equals
    the norm of the moment difference (or sum, for antiparallel lines).
    """
    cos_bar = dual_dot(a, b)
    cross = dual_cross(a, b)
    sin_real = np.linalg.norm(cross.real, axis=-1)

    scalar_input = np.ndim(sin_real) == 0
    sin_real = np.atleast_1d(sin_real)
    cos_real = np.atleast_1d(np.asarray(cos_bar.real, dtype=float))
    cos_dual = np.atleast_1d(np.asarray(cos_bar.dual, dtype=float))
    cr = np.atleast_2d(cross.real)
    cd = np.atleast_2d(cross.dual)
    ar_dual = np.atleast_2d(a.dual)
    br_dual = np.atleast_2d(b.dual)

    parallel = sin_real < PARALLEL_SIN_EPS
    safe_sin = np.where(parallel, 1.0, sin_real)
    sin_dual = np.sum(cr * cd, axis=-1) / safe_sin

    theta = np.arctan2(sin_real, cos_real)
    # d(atan2(s, c)) with s^2 + c^2 = 1 for unit inputs
    theta_star = np.cos(theta) * sin_dual - np.sin(theta) * cos_dual

    if np.any(parallel):
        same = cos_real > 0.0
        dist_same = np.linalg.norm(br_dual - ar_dual, axis=-1)
        dist_anti = np.linalg.norm(br_dual + ar_dual, axis=-1)
        theta = np.where(parallel, np.where(same, 0.0, np.pi), theta)
        theta_star = np.where(parallel, np.where(same, dist_same, dist_anti),
                              theta_star)

    if scalar_input:
        return DualAngle(float(theta[0]), float(theta_star[0]))
    return DualAngle(theta, theta_star)
