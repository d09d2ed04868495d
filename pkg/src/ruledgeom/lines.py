"""Oriented lines in 3-space and their dual-unit-vector representation.

An oriented line through point p with unit direction d maps to the dual
unit vector (d, p x d); the moment p x d does not depend on the choice of
p on the line.  The inverse map recovers the line with foot point d x m,
the point of the line nearest the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import DualVector
from .errors import NotALine

# Tolerance for accepting a dual vector as a line (unit direction,
# direction-orthogonal moment).
LINE_CONSTRAINT_TOL = 1e-9


@dataclass(frozen=True)
class Line:
    """Oriented line: a point on it and a unit direction."""

    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.point, dtype=float)
        d = np.asarray(self.direction, dtype=float)
        n = np.linalg.norm(d)
        if n < 1e-12:
            raise ValueError("line direction must be nonzero")
        if abs(n - 1.0) > 1e-12:  # keep already-unit directions bitwise
            d = d / n
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "direction", d)

    def distance_to_point(self, q) -> float:
        q = np.asarray(q, dtype=float)
        return float(np.linalg.norm(np.cross(q - self.point, self.direction)))


def line_to_dual(line: Line) -> DualVector:
    """E. Study image of an oriented line: (direction, point x direction)."""
    return DualVector(line.direction, np.cross(line.point, line.direction))


def dual_to_line(v: DualVector, tol: float = LINE_CONSTRAINT_TOL) -> Line:
    """Recover the oriented line of a dual unit vector.

    Raises NotALine unless <a,a> = 1 and <a,a*> = 0 within `tol`.  The
    returned point is the foot of the origin perpendicular, a x a*.
    """
    a, m = v.real, v.dual
    unit_defect = abs(float(a @ a) - 1.0)
    moment_defect = abs(float(a @ m))
    if unit_defect > tol or moment_defect > tol:
        raise NotALine(
            f"constraint violation: |<a,a>-1|={unit_defect:.3e}, "
            f"|<a,a*>|={moment_defect:.3e} (tol {tol:.1e})")
    return Line(point=np.cross(a, m), direction=a)


def common_perpendicular(l1: Line, l2: Line):
    """Shortest distance between two lines and a perpendicular foot pair.

    Returns (distance, (foot_on_l1, foot_on_l2)).  For parallel lines the
    distance is the point-to-line distance and the feet are one valid
    perpendicular pair.
    """
    e1, e2 = l1.direction, l2.direction
    w = l1.point - l2.point
    b = float(e1 @ e2)
    denom = 1.0 - b * b
    if denom < 1e-12:  # parallel: project l1.point onto l2
        f1 = l1.point
        f2 = l2.point + float((l1.point - l2.point) @ e2) * e2
        return float(np.linalg.norm(f1 - f2)), (f1, f2)
    d = float(e1 @ w)
    e = float(e2 @ w)
    t1 = (b * e - d) / denom
    t2 = (e - b * d) / denom
    f1 = l1.point + t1 * e1
    f2 = l2.point + t2 * e2
    return float(np.linalg.norm(f1 - f2)), (f1, f2)


def sample_lines(rng: np.random.Generator, count: int) -> list[Line]:
    """Random oriented lines for property suites: directions uniform on the
    sphere, points uniform in [-10, 10]^3."""
    dirs = rng.normal(size=(count, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    pts = rng.uniform(-10.0, 10.0, size=(count, 3))
    return [Line(point=p, direction=d) for p, d in zip(pts, dirs)]
