"""CSV tables, OBJ meshes, and report rendering.

All emission is locale-independent: '.' decimal point, 17 significant
digits, LF line endings, fixed column order.
"""

from __future__ import annotations

import csv
from typing import Optional

import numpy as np

from .errors import ConfigError
from .offsets import OffsetReport, OffsetSpec
from .surface import SurfaceAnalysis

ANALYSIS_COLUMNS = [
    "u", "s", "s_star",
    "c_x", "c_y", "c_z", "e_x", "e_y", "e_z",
    "t_x", "t_y", "t_z", "g_x", "g_y", "g_z",
    "Delta", "delta", "gamma", "gamma_dual",
    "R_real", "R_dual", "rho_real", "rho_dual",
]

SAMPLED_COLUMNS = ["u", "ex", "ey", "ez", "px", "py", "pz"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_analysis_csv(path, analysis: SurfaceAnalysis) -> None:
    """One row per sample with the frame, scalar invariants and the dual
    curvature columns."""
    inv = analysis.invariants()
    cols = np.column_stack([
        analysis.u, analysis.s, analysis.s_star,
        analysis.c, analysis.e, analysis.t, analysis.g,
        analysis.Delta, analysis.delta, analysis.gamma, analysis.gamma_dual,
        inv.R.real, inv.R.dual, inv.rho.theta, inv.rho.theta_star,
    ])
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(ANALYSIS_COLUMNS) + "\n")
        for row in cols:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_sampled_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a sampled-curve surface: u, director xyz, base-point xyz."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty file") from None
        if [h.strip() for h in header] != SAMPLED_COLUMNS:
            raise ConfigError(
                f"{path}: expected header {','.join(SAMPLED_COLUMNS)}")
        try:
            rows = np.array([[float(v) for v in row] for row in reader if row])
        except ValueError as exc:
            raise ConfigError(f"{path}: non-numeric cell ({exc})") from None
    if rows.ndim != 2 or rows.shape[1] != 7 or len(rows) < 5:
        raise ConfigError(f"{path}: need at least 5 rows of 7 columns")
    return rows[:, 0], rows[:, 1:4], rows[:, 4:7]


def write_obj(path, grid: np.ndarray) -> None:
    """Quad mesh of a (n_u, n_v, 3) vertex grid.

    Vertices are emitted u-major, faces are counter-clockwise quads with
    1-based indices."""
    n_u, n_v, _ = grid.shape
    with open(path, "w", newline="\n") as fh:
        for i in range(n_u):
            for j in range(n_v):
                x, y, z = grid[i, j]
                fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for i in range(n_u - 1):
            for j in range(n_v - 1):
                a = i * n_v + j + 1
                b = (i + 1) * n_v + j + 1
                c = (i + 1) * n_v + j + 2
                d = i * n_v + j + 2
                fh.write(f"f {a} {b} {c} {d}\n")


def surface_grid(analysis: SurfaceAnalysis, v_range, v_count: int,
                 e: Optional[np.ndarray] = None,
                 c: Optional[np.ndarray] = None) -> np.ndarray:
    """Vertex grid phi(u_i, v_j) = c(u_i) + v_j e(u_i) on the sample grid."""
    if e is None:
        e = analysis.e
    if c is None:
        c = analysis.c
    v = np.linspace(float(v_range[0]), float(v_range[1]), int(v_count))
    return c[:, None, :] + v[None, :, None] * e[:, None, :]


def _cell(x: Optional[float]) -> str:
    return "n/a(guard)" if x is None else f"{x:.3e}"


def describe_offset_spec(spec: OffsetSpec) -> str:
    if spec.mode == "theorem_consistent":
        return (f"mode=theorem_consistent c={spec.c:g} c_star={spec.c_star:g}")
    return f"mode=constant_angle theta={spec.theta:g} theta_star={spec.theta_star:g}"


def render_offset_report(index: int, spec: OffsetSpec, report: OffsetReport,
                         mannheim_real_tol: float, mannheim_dual_tol: float,
                         compare_tol: float) -> tuple[str, bool]:
    """Fixed-format report text; returns (text, all_assertions_passed).

    In theorem mode every deviation is asserted against its tolerance; in
    constant-angle mode the deviations are informational findings."""
    info = report.informational
    lines = [f"offset {index}: {describe_offset_spec(spec)}"]
    ok = True

    def verdict(value, tol) -> str:
        nonlocal ok
        if info:
            return "info"
        if value is None:
            return "n/a(guard)"
        if value <= tol:
            return f"ok (tol {tol:.1e})"
        ok = False
        return f"FAIL (tol {tol:.1e})"

    lines.append(f"  samples compared: {report.n_valid}/{report.offset_analysis.n}"
                 + ("  [informational: constant-angle offsets need not satisfy"
                    " the Mannheim condition]" if info else ""))
    mr, md = report.mannheim_residual_real, report.mannheim_residual_dual
    lines.append(f"  mannheim residual |g~ - t1~|: real={mr:.3e} "
                 f"[{verdict(mr, mannheim_real_tol)}] dual={md:.3e} "
                 f"[{verdict(md, mannheim_dual_tol)}]")
    bd, bmax = report.base_developable
    od, omax = report.offset_developable
    lines.append(f"  developable: base={'yes' if bd else 'no'} "
                 f"(max|Delta|={bmax:.3e})  offset={'yes' if od else 'no'} "
                 f"(max|Delta1|={omax:.3e})")
    lines.append("  predicted vs recomputed (max |deviation| over compared samples):")
    for row in report.rows:
        lines.append(f"    {row.name:28s} {_cell(row.deviation):>12s}  "
                     f"[{verdict(row.deviation, compare_tol)}]"
                     + (f"  {row.note}" if row.note else ""))
    lines.append(f"  striction transport residual: "
                 f"{report.constructed.transport_residual:.3e}")
    return "\n".join(lines) + "\n", ok
