"""Built-in ruled surfaces with analytic derivative oracles.

All director/base callables are vectorized over the parameter and carry
first and second derivatives, so the analysis pipeline runs in its exact
(analytic) mode on these surfaces.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .surface import SurfaceSpec, unit_normalized


def _xyz(x, y, z):
    return np.stack(np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float),
        np.asarray(z, dtype=float)), axis=-1)


def _zero3(u):
    u = np.asarray(u, dtype=float)
    return np.zeros(u.shape + (3,))


def hyperbolic_paraboloid(param_range=(-1.0, 1.0),
                          sample_count: int = 2001) -> SurfaceSpec:
    """Doubly ruled saddle: base (u/2, u/2, 0), rulings along the
    normalized direction (1/2, -1/2, u)."""
    director, d1, d2 = unit_normalized(
        lambda u: _xyz(0.5, -0.5, u),
        lambda u: _xyz(0.0, 0.0, np.ones_like(np.asarray(u, dtype=float))),
        lambda u: _zero3(u))
    return SurfaceSpec(
        director=director, director_d1=d1, director_d2=d2,
        base=lambda u: _xyz(0.5 * np.asarray(u, float),
                            0.5 * np.asarray(u, float), 0.0),
        base_d1=lambda u: _xyz(0.5, 0.5, 0.0 * np.asarray(u, float)),
        base_d2=_zero3,
        param_range=param_range, sample_count=sample_count,
        name="hyperbolic_paraboloid")


def cone(alpha: float, param_range=(0.0, 2.0 * np.pi),
         sample_count: int = 2001) -> SurfaceSpec:
    """Right circular cone with half-angle alpha, apex at the origin.
    Developable: the striction curve degenerates to the apex."""
    if not 0.0 < alpha < 0.5 * np.pi:
        raise ConfigError("cone half-angle must lie in (0, pi/2)")
    sa, ca = np.sin(alpha), np.cos(alpha)
    return SurfaceSpec(
        director=lambda u: _xyz(sa * np.cos(u), sa * np.sin(u),
                                ca * np.ones_like(np.asarray(u, float))),
        director_d1=lambda u: _xyz(-sa * np.sin(u), sa * np.cos(u), 0.0),
        director_d2=lambda u: _xyz(-sa * np.cos(u), -sa * np.sin(u), 0.0),
        base=_zero3, base_d1=_zero3, base_d2=_zero3,
        param_range=param_range, sample_count=sample_count,
        name=f"cone(alpha={alpha:g})")


def small_circle(beta: float, radius: float = 1.0,
                 param_range=(0.0, 2.0 * np.pi),
                 sample_count: int = 2001) -> SurfaceSpec:
    """One-sheet hyperboloid of revolution x^2 + y^2 = r^2 + z^2 tan^2(beta):
    director on the colatitude-beta circle, base tangent to the waist
    circle.  Constant invariants, none of them zero (for 0 < beta < pi/2),
    so it exercises the general offset formulas."""
    if not 0.0 < beta < 0.5 * np.pi:
        raise ConfigError("small_circle colatitude must lie in (0, pi/2)")
    sb, cb = np.sin(beta), np.cos(beta)
    r = float(radius)
    return SurfaceSpec(
        director=lambda u: _xyz(sb * np.cos(u), sb * np.sin(u),
                                cb * np.ones_like(np.asarray(u, float))),
        director_d1=lambda u: _xyz(-sb * np.sin(u), sb * np.cos(u), 0.0),
        director_d2=lambda u: _xyz(-sb * np.cos(u), -sb * np.sin(u), 0.0),
        base=lambda u: _xyz(-r * np.sin(u), r * np.cos(u),
                            0.0 * np.asarray(u, float)),
        base_d1=lambda u: _xyz(-r * np.cos(u), -r * np.sin(u), 0.0),
        base_d2=lambda u: _xyz(r * np.sin(u), -r * np.cos(u), 0.0),
        param_range=param_range, sample_count=sample_count,
        name=f"small_circle(beta={beta:g})")


def helicoid(pitch: float, param_range=(0.0, 2.0 * np.pi),
             sample_count: int = 2001) -> SurfaceSpec:
    """Right helicoid: horizontal rulings through the z-axis, which is the
    striction line; constant distribution parameter equal to the pitch."""
    p = float(pitch)
    return SurfaceSpec(
        director=lambda u: _xyz(np.cos(u), np.sin(u),
                                0.0 * np.asarray(u, float)),
        director_d1=lambda u: _xyz(-np.sin(u), np.cos(u), 0.0),
        director_d2=lambda u: _xyz(-np.cos(u), -np.sin(u), 0.0),
        base=lambda u: _xyz(0.0, 0.0, p * np.asarray(u, float)),
        base_d1=lambda u: _xyz(0.0, 0.0, p * np.ones_like(np.asarray(u, float))),
        base_d2=_zero3,
        param_range=param_range, sample_count=sample_count,
        name=f"helicoid(pitch={pitch:g})")


_BUILDERS = {
    "hyperbolic_paraboloid": (hyperbolic_paraboloid, ()),
    "cone": (cone, ("alpha",)),
    "small_circle": (small_circle, ("beta", "radius")),
    "helicoid": (helicoid, ("pitch",)),
}


def builtin_names() -> list[str]:
    return sorted(_BUILDERS)


def builtin_surface(name: str, params: dict, param_range,
                    sample_count: int) -> SurfaceSpec:
    """Instantiate a catalog surface by name; unknown names or parameters
    are configuration errors."""
    if name not in _BUILDERS:
        raise ConfigError(
            f"unknown builtin surface {name!r}; choose from {builtin_names()}")
    builder, allowed = _BUILDERS[name]
    extra = set(params) - set(allowed)
    if extra:
        raise ConfigError(
            f"surface {name!r} does not accept parameters {sorted(extra)}")
    missing = [k for k in allowed if k != "radius" and k not in params]
    if missing:
        raise ConfigError(f"surface {name!r} requires parameters {missing}")
    return builder(param_range=tuple(param_range), sample_count=sample_count,
                   **params)
