"""Deterministic verification suites.

Every suite turns one contract of the kernel into named residual checks:
seeded random-input properties for the algebra and the line
correspondence, closed-form reproductions on the catalog surfaces, and
the full Mannheim-offset comparison of predicted against independently
recomputed invariants.  With a fixed seed the report text is
byte-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog
from .config import Tolerances
from .dual import (DualScalar, DualVector, dual_angle, dual_cross, dual_dot,
                   dual_mul, dual_norm, dual_normalize, lift)
from .lines import (common_perpendicular, dual_to_line, line_to_dual,
                    sample_lines)
from .offsets import (OffsetSpec, developability_conditions, offset_angle,
                      verify_offset)
from .surface import SurfaceSpec, analyze, frame_ode_residual

SQ2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.measured <= self.tolerance


def _c(name: str, measured: float, tol: float) -> Check:
    return Check(name, float(measured), float(tol))


def suite_dual_algebra(tol: Tolerances, seed: int) -> list[Check]:
    """Nilpotency, lifted derivatives against finite differences, the dual
    Lagrange identity, and normalization, on 1000 seeded samples."""
    rng = np.random.default_rng(seed)
    n = 1000
    out = []

    eps2 = dual_mul(DualScalar(0.0, 1.0), DualScalar(0.0, 1.0))
    out.append(_c("algebra: eps*eps = 0",
                  abs(eps2.real) + abs(eps2.dual), tol.algebra_identity))

    a = DualScalar(rng.uniform(-10, 10, n), rng.uniform(-10, 10, n))
    b = DualScalar(rng.uniform(-10, 10, n), rng.uniform(-10, 10, n))
    d1 = dual_mul(a, b).dual
    d2 = dual_mul(DualScalar(a.real, 2.0 * a.dual),
                  DualScalar(b.real, 2.0 * b.dual)).dual
    out.append(_c("algebra: product dual part linear in duals "
                  "(no eps^2 term)", np.max(np.abs(d2 - 2.0 * d1)),
                  tol.algebra_identity))

    h = 1e-5
    star = rng.uniform(0.5, 2.0, n) * rng.choice([-1.0, 1.0], n)
    worst = 0.0
    for fname, f, fp, lo, hi in [
            ("sin", np.sin, np.cos, -3.0, 3.0),
            ("cos", np.cos, lambda t: -np.sin(t), -3.0, 3.0),
            ("exp", np.exp, np.exp, -2.0, 2.0),
            ("sqrt", np.sqrt, lambda t: 0.5 / np.sqrt(t), 0.1, 10.0)]:
        x = DualScalar(rng.uniform(lo, hi, n), star)
        fd = (f(x.real + h) - f(x.real - h)) / (2.0 * h)
        rel = np.max(np.abs(lift(f, fp, x).dual - x.dual * fd)
                     / np.abs(x.dual))
        worst = max(worst, float(rel))
    out.append(_c("algebra: lifted derivative vs central difference "
                  "(relative, h=1e-5)", worst, tol.lift_fd_rel))

    def rand_dv():
        return DualVector(rng.uniform(-2, 2, (n, 3)),
                          rng.uniform(-2, 2, (n, 3)))

    va, vb = rand_dv(), rand_dv()
    cr = dual_cross(va, vb)
    lhs = dual_dot(cr, cr) + dual_mul(dual_dot(va, vb), dual_dot(va, vb))
    rhs = dual_mul(dual_dot(va, va), dual_dot(vb, vb))
    out.append(_c("algebra: dual Lagrange identity (real part)",
                  np.max(np.abs(lhs.real - rhs.real)), tol.lagrange))
    out.append(_c("algebra: dual Lagrange identity (dual part)",
                  np.max(np.abs(lhs.dual - rhs.dual)), tol.lagrange))

    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    vc = DualVector(dirs * rng.uniform(0.5, 3.0, (n, 1)),
                    rng.uniform(-3, 3, (n, 3)))
    nn = dual_norm(dual_normalize(vc))
    out.append(_c("algebra: dual_normalize yields norm 1 + eps*0",
                  max(np.max(np.abs(nn.real - 1.0)), np.max(np.abs(nn.dual))),
                  tol.normalize_unit))
    return out


def suite_line_correspondence(tol: Tolerances, seed: int) -> list[Check]:
    """Oriented-line round trip through the dual unit sphere and the
    dual-angle distance against the common-perpendicular oracle, on 1000
    seeded random lines."""
    rng = np.random.default_rng(seed + 1)
    lines = sample_lines(rng, 1000)
    duals = [line_to_dual(l) for l in lines]

    constraint = max(
        max(abs(float(v.real @ v.real) - 1.0), abs(float(v.real @ v.dual)))
        for v in duals)
    direction = 0.0
    foot = 0.0
    for l, v in zip(lines, duals):
        back = dual_to_line(v)
        direction = max(direction,
                        float(np.max(np.abs(back.direction - l.direction))))
        foot = max(foot, l.distance_to_point(back.point))

    pair_dev = 0.0
    for l1, l2, v1, v2 in zip(lines[0::2], lines[1::2],
                              duals[0::2], duals[1::2]):
        dist, _ = common_perpendicular(l1, l2)
        ang = dual_angle(v1, v2)
        pair_dev = max(pair_dev, abs(abs(ang.theta_star) - dist))

    return [
        _c("lines: |<a,a>-1| and |<a,a*>| of the line image",
           constraint, tol.pluecker_constraints),
        _c("lines: round-trip direction (exact)", direction, 0.0),
        _c("lines: round-trip foot point lies on the source line",
           foot, tol.roundtrip_foot),
        _c("lines: |theta*| equals common-perpendicular distance",
           pair_dev, tol.theta_star_oracle),
    ]


def _saddle(n: int = 2001) -> SurfaceSpec:
    return catalog.hyperbolic_paraboloid((-1.0, 1.0), n)


def suite_saddle_reproduction(tol: Tolerances) -> list[Check]:
    """Closed-form frame of the doubly ruled saddle: constant asymptotic
    normal, vanishing conical curvature and striction drift, distribution
    parameter -(1+2u^2)/2, and the dual ruling at u = 0."""
    a = analyze(_saddle())
    g_want = np.array([-SQ2 / 2.0, -SQ2 / 2.0, 0.0])
    i0 = a.n // 2
    e_tilde, _, _ = a.dual_frame()
    ruling_dev = max(
        float(np.max(np.abs(e_tilde.real[i0] - np.array([SQ2 / 2, -SQ2 / 2, 0.0])))),
        float(np.max(np.abs(e_tilde.dual[i0]))))
    return [
        _c("saddle: asymptotic normal constant (-sqrt2/2, -sqrt2/2, 0)",
           np.max(np.abs(a.g - g_want)), tol.example_g),
        _c("saddle: conical curvature vanishes",
           np.max(np.abs(a.gamma)), tol.example_gamma),
        _c("saddle: striction drift delta vanishes",
           np.max(np.abs(a.delta)), tol.example_delta),
        _c("saddle: distribution parameter equals -(1+2u^2)/2",
           np.max(np.abs(a.Delta + 0.5 * (1.0 + 2.0 * a.u ** 2))),
           tol.example_Delta),
        _c("saddle: dual ruling at u=0", ruling_dev, tol.example_ruling),
    ]


def suite_catalog_offsets(tol: Tolerances) -> list[Check]:
    """The two constant-angle saddle offsets land on the translated
    striction lines (u/2-4, u/2-4, 0) and (u/2-2, u/2-2, 0), both as
    constructed and as independently recomputed."""
    a = analyze(_saddle())
    out = []
    for label, spec, shift in [
            ("oriented, theta*=4*sqrt2", OffsetSpec.constant(0.0, 4.0 * SQ2), 4.0),
            ("theta=pi/4, theta*=2*sqrt2",
             OffsetSpec.constant(np.pi / 4.0, 2.0 * SQ2), 2.0)]:
        want = np.stack([a.u / 2.0 - shift, a.u / 2.0 - shift,
                         np.zeros_like(a.u)], axis=1)
        rep = verify_offset(a, spec)
        out.append(_c(f"saddle offset ({label}): constructed striction line",
                      np.max(np.abs(rep.constructed.c1 - want)),
                      tol.offset_striction))
        out.append(_c(f"saddle offset ({label}): recomputed striction line",
                      np.max(np.abs(rep.offset_analysis.c - want)),
                      tol.offset_striction))
    return out


def _theorem_cases() -> list[tuple[str, SurfaceSpec, float, float]]:
    # ranges chosen so theta = -s + c sweeps [0.3, 2.8]
    return [
        ("cone(alpha=pi/4)",
         catalog.cone(np.pi / 4.0, (0.0, 2.5 / np.sin(np.pi / 4.0)), 2001),
         2.8, 0.7),
        ("small_circle(beta=pi/6)",
         catalog.small_circle(np.pi / 6.0, 1.0,
                              (0.0, 2.5 / np.sin(np.pi / 6.0)), 2001),
         2.8, 1.0),
    ]


def suite_theorem_offsets(tol: Tolerances) -> list[Check]:
    """Theorem-consistent offsets on the cone and the one-sheet
    hyperboloid: the Mannheim frame condition, every predicted invariant
    against its recomputation, and the differential law
    d(theta~)/d(s~) = -1 + eps*0."""
    out = []
    for label, spec, c, c_star in _theorem_cases():
        a = analyze(spec)
        rep = verify_offset(a, OffsetSpec.theorem(c, c_star))
        out.append(_c(f"{label}: mannheim residual |g~-t1~| (real)",
                      rep.mannheim_residual_real, tol.mannheim_real))
        out.append(_c(f"{label}: mannheim residual |g~-t1~| (dual)",
                      rep.mannheim_residual_dual, tol.mannheim_dual))
        for row in rep.rows:
            dev = row.deviation if row.deviation is not None else np.inf
            out.append(_c(f"{label}: predicted vs recomputed {row.name}",
                          dev, tol.theorem_compare))

        th, ths = rep.constructed.theta, rep.constructed.theta_star
        ds, dss = np.diff(a.s), np.diff(a.s_star)
        real_law = np.max(np.abs(np.diff(th) / ds + 1.0))
        dual_law = np.max(np.abs(
            (np.diff(ths) * ds - np.diff(th) * dss) / (ds * ds)))
        out.append(_c(f"{label}: d(theta)/d(s) = -1", real_law, tol.theta_law))
        out.append(_c(f"{label}: d(theta~)/d(s~) dual part = 0",
                      dual_law, tol.theta_law))
    return out


def suite_developability(tol: Tolerances) -> list[Check]:
    """Developability both ways on the cone: vanishing distribution
    parameter comes with a constant offset distance, and the offset built
    with the flattening profile theta* = -(delta/gamma) tan(theta) has a
    vanishing distribution parameter itself."""
    spec = catalog.cone(np.pi / 4.0, (0.0, 2.5 / np.sin(np.pi / 4.0)), 2001)
    a = analyze(spec)
    theta, theta_star = offset_angle(a, 2.8, 0.7)
    ev = developability_conditions(a, theta, theta_star)
    profile_dev = float(np.max(np.abs(
        ev.offset_theta_star[ev.offset_theta_star_valid])))
    rep = verify_offset(a, OffsetSpec.theorem(2.8, 0.0))
    return [
        _c("cone: max|Delta| (developable base)",
           ev.base_max_abs_Delta, tol.developable_evidence),
        _c("cone: offset distance variation (constant theta*)",
           ev.theta_star_variation, tol.developable_evidence),
        _c("cone: flattening profile -(delta/gamma)tan(theta) = 0",
           profile_dev, tol.developable_evidence),
        _c("cone: offset built with the flattening profile has max|Delta1|",
           rep.offset_developable[1], tol.developable_offset),
    ]


def _pipeline_checks(label: str, a, tol: Tolerances,
                     ode_tol: float) -> list[Check]:
    trim = slice(2, a.n - 2)
    e_tilde, t_tilde, _ = a.dual_frame()
    ee = dual_dot(e_tilde, e_tilde)
    unit_dev = max(np.max(np.abs(ee.real - 1.0)), np.max(np.abs(ee.dual)))

    c_s = a.c_u / a.sigma[:, None]
    ortho = np.max(np.abs(np.sum(c_s * a.t, axis=1)[trim]))
    decomp = np.max(np.linalg.norm(
        (c_s - a.delta[:, None] * a.e - a.Delta[:, None] * a.g)[trim], axis=1))

    ds, dss = np.diff(a.s), np.diff(a.s_star)
    mid_Delta = 0.5 * (a.Delta[1:] + a.Delta[:-1])
    arc_speed = np.max(np.abs(dss / ds - mid_Delta))

    ode = frame_ode_residual(a)
    inv = a.invariants()
    return [
        _c(f"{label}: dual ruling stays on the dual unit sphere",
           unit_dev, tol.dual_unit),
        _c(f"{label}: frame orthonormality",
           ode.orthonormality_max, tol.frame_orthonormal),
        _c(f"{label}: striction orthogonality <c', e'>",
           ortho, tol.striction_orthogonality),
        _c(f"{label}: c' = delta e + Delta g",
           decomp, tol.striction_decomposition),
        _c(f"{label}: finite-difference d(s*)/ds = Delta",
           arc_speed, tol.arc_speed_fd),
        _c(f"{label}: frame evolution residual (real)",
           ode.real_max, ode_tol),
        _c(f"{label}: frame evolution residual (dual)",
           ode.dual_max, ode_tol),
        _c(f"{label}: sin(rho)=R and cot(rho)=gamma (dual identities)",
           inv.radius_identity_residual(a.gamma_bar()), tol.radius_identity),
        _c(f"{label}: reparametrization chain-rule residual",
           a.reparam.chain_rule_residual(), tol.chain_rule),
    ]


def suite_pipeline(tol: Tolerances) -> list[Check]:
    """Analysis-pipeline invariants across the catalog, the sampled
    (no-oracle) path, and invariance of the analysis under moving the
    base curve along the rulings."""
    out = []
    surfaces = [
        ("saddle", _saddle()),
        ("cone", catalog.cone(np.pi / 4.0, (0.0, 3.0), 2001)),
        ("hyperboloid", catalog.small_circle(np.pi / 6.0, 1.0, (0.0, 5.0), 2001)),
        ("helicoid", catalog.helicoid(0.4, (0.0, 2.0 * np.pi), 2001)),
    ]
    for label, spec in surfaces:
        out.extend(_pipeline_checks(label, analyze(spec), tol,
                                    tol.frame_ode_analytic))

    sampled = _saddle()
    sampled = SurfaceSpec(director=sampled.director, base=sampled.base,
                          param_range=sampled.param_range,
                          sample_count=sampled.sample_count,
                          name="saddle-sampled")
    a = analyze(sampled)
    ode = frame_ode_residual(a)
    out.append(_c("saddle (no oracles): frame evolution residual (real)",
                  ode.real_max, tol.frame_ode_sampled))
    out.append(_c("saddle (no oracles): frame evolution residual (dual)",
                  ode.dual_max, tol.frame_ode_sampled))

    base = analyze(_saddle())
    shifted = _shifted_base_saddle()
    b = analyze(shifted)
    inv_dev = max(float(np.max(np.abs(b.c - base.c))),
                  float(np.max(np.abs(b.Delta - base.Delta))),
                  float(np.max(np.abs(b.delta - base.delta))),
                  float(np.max(np.abs(b.gamma - base.gamma))))
    out.append(_c("saddle: striction/invariants unchanged when the base "
                  "curve slides along the rulings", inv_dev,
                  tol.striction_invariance))
    return out


def _shifted_base_saddle() -> SurfaceSpec:
    """Saddle with base p(u) + mu(u) e(u), mu = 0.3 sin(2u) + 0.2."""
    s = _saddle()

    def mu(u):
        return 0.3 * np.sin(2.0 * np.asarray(u, float)) + 0.2

    def mu1(u):
        return 0.6 * np.cos(2.0 * np.asarray(u, float))

    def mu2(u):
        return -1.2 * np.sin(2.0 * np.asarray(u, float))

    def base(u):
        return s.base(u) + mu(u)[..., None] * s.director(u)

    def base_d1(u):
        return (s.base_d1(u) + mu1(u)[..., None] * s.director(u)
                + mu(u)[..., None] * s.director_d1(u))

    def base_d2(u):
        return (s.base_d2(u) + mu2(u)[..., None] * s.director(u)
                + 2.0 * mu1(u)[..., None] * s.director_d1(u)
                + mu(u)[..., None] * s.director_d2(u))

    return SurfaceSpec(director=s.director, director_d1=s.director_d1,
                       director_d2=s.director_d2, base=base, base_d1=base_d1,
                       base_d2=base_d2, param_range=s.param_range,
                       sample_count=s.sample_count, name="saddle-shifted-base")


SUITES = [
    ("dual algebra", lambda tol, seed: suite_dual_algebra(tol, seed)),
    ("line correspondence", lambda tol, seed: suite_line_correspondence(tol, seed)),
    ("saddle reproduction", lambda tol, seed: suite_saddle_reproduction(tol)),
    ("catalog offsets", lambda tol, seed: suite_catalog_offsets(tol)),
    ("theorem offsets", lambda tol, seed: suite_theorem_offsets(tol)),
    ("developability", lambda tol, seed: suite_developability(tol)),
    ("pipeline properties", lambda tol, seed: suite_pipeline(tol)),
]


def run_all(tol: Tolerances, seed: int) -> tuple[str, int]:
    """Run every suite; returns (report text, number of failed checks)."""
    lines = []
    failed = 0
    total = 0
    for title, fn in SUITES:
        lines.append(f"[{title}]")
        for check in fn(tol, seed):
            total += 1
            status = "PASS" if check.passed else "FAIL"
            if not check.passed:
                failed += 1
            lines.append(f"  {status}  {check.name}  "
                         f"measured={check.measured:.3e}  "
                         f"tol={check.tolerance:.3e}")
    lines.append(f"{total - failed}/{total} checks passed"
                 + ("" if failed == 0 else f"; {failed} FAILED"))
    return "\n".join(lines) + "\n", failed
