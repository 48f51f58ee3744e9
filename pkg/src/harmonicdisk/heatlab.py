"""Steady-state heat solver on the disk and the transform-comparison harness.

The solver discretizes div(k grad u) = -f on a uniform polar mesh with a
finite-volume five-point stencil.  The origin is handled by averaging the
innermost ring (the origin value is the ring mean rather than a separate
balance equation); the resulting system is symmetric positive definite
after eliminating the origin, and is solved with conjugate gradients.

The comparison harness puts the solver output next to the area-kernel
transform of the same source and reports correlation, the least-squares
scale factor, and the residual.  It deliberately makes no pass/fail
judgment: whether the transform reproduces the physical equilibrium is
an open question, and the report is the deliverable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DomainError, NonConvergenceError, NonFiniteError
from .geometry import EvaluationGrid
from .quadrature import QuadratureSpec
from .sources import CharacteristicDisk, SourceFunction
from .transforms import Field, q_transform

TWO_PI = 2.0 * math.pi

BOUNDARY_TAGS = ("dirichlet_zero", "robin")


@dataclass(frozen=True)
class BoundaryCondition:
    """Outer-edge condition: u = 0, or Newton cooling -k du/dr = h u."""

    tag: str
    h: float | None = None

    def __post_init__(self):
        if self.tag not in BOUNDARY_TAGS:
            raise DomainError(f"unknown boundary tag {self.tag!r}, expected {BOUNDARY_TAGS}")
        if self.tag == "robin":
            if self.h is None or self.h <= 0:
                raise DomainError("robin boundary needs h > 0")
        elif self.h is not None:
            raise DomainError("dirichlet_zero takes no h")

    def describe(self) -> str:
        return self.tag if self.h is None else f"{self.tag}(h={self.h:g})"


@dataclass(frozen=True)
class HeatProblem:
    source: SourceFunction
    conductivity: float = 1.0
    boundary: BoundaryCondition = BoundaryCondition("dirichlet_zero")
    n_r: int = 128
    n_theta: int = 256

    def __post_init__(self):
        if self.conductivity <= 0:
            raise DomainError("conductivity must be positive")
        if self.n_r < 16 or self.n_theta < 16:
            raise DomainError("mesh resolutions must be >= 16")


@dataclass(frozen=True)
class ConjectureReport:
    correlation: float
    scale_factor: float
    residual_rms: float
    boundary_condition: str
    degenerate: bool
    n_points: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "correlation": self.correlation,
                "scale_factor": self.scale_factor,
                "residual_rms": self.residual_rms,
                "boundary_condition": self.boundary_condition,
                "degenerate": self.degenerate,
                "n_points": self.n_points,
            },
            indent=2,
        )


def _assemble(problem: HeatProblem):
    """SPD system for interior rings (plus the boundary ring under Robin)."""
    n, m = problem.n_r, problem.n_theta
    k = problem.conductivity
    dr = 1.0 / n
    dt = TWO_PI / m
    robin = problem.boundary.tag == "robin"
    n_rings = n if robin else n - 1  # rings at r_i = i*dr, i = 1..n_rings

    radii = dr * np.arange(1, n_rings + 1)
    theta = -math.pi + dt * np.arange(m)
    f_vals = np.asarray(problem.source.values(radii[:, None], theta[None, :]), dtype=float)
    f_vals = np.broadcast_to(f_vals, (n_rings, m))
    if not np.all(np.isfinite(f_vals)):
        raise NonFiniteError("source is not finite at a mesh node")

    def idx(i, j):
        return (i - 1) * m + j

    rows, cols, data = [], [], []
    rhs = np.zeros(n_rings * m)

    def add(i1, j1, i2, j2, value):
        rows.append(idx(i1, j1))
        cols.append(idx(i2, j2 % m))
        data.append(value)

    for i in range(1, n_rings + 1):
        r_i = i * dr
        half_cell = robin and i == n  # half control volume at the rim
        r_out = 1.0 if half_cell else r_i + 0.5 * dr
        r_in = r_i - 0.5 * dr
        a_in = r_in / dr * dt
        a_out = r_out / dr * dt
        width = 0.5 * dr if half_cell else dr
        b = width / (r_i * dt)
        cell = r_i * width * dt
        for j in range(m):
            diag = a_in + 2.0 * b
            # inner neighbor
            if i == 1:
                # origin closure: u_0 = ring-1 mean
                for jp in range(m):
                    add(i, j, 1, jp, -a_in / m)
            else:
                add(i, j, i - 1, j, -a_in)
            # outer neighbor
            if half_cell:
                diag += problem.boundary.h / k * dt  # Robin loss through the rim
            elif i == n_rings and not robin:
                diag += a_out  # Dirichlet zero beyond the last ring
            else:
                diag += a_out
                add(i, j, i + 1, j, -a_out)
            add(i, j, i, j - 1, -b)
            add(i, j, i, j + 1, -b)
            add(i, j, i, j, diag)
            rhs[idx(i, j)] = f_vals[i - 1, j] / k * cell

    matrix = sp.csr_matrix(
        sp.coo_matrix((data, (rows, cols)), shape=(n_rings * m, n_rings * m))
    )
    return matrix, rhs, n_rings


def solve_steady_state(
    problem: HeatProblem,
    rel_tol: float = 1e-12,
    max_iter: int = 50000,
) -> Field:
    """Solve the steady-state balance on the mesh; returns the interior field.

    The returned grid holds the origin plus rings at i/n_r for
    i = 1 .. n_r - 1 (the r = 1 boundary row is excluded: Dirichlet
    values are identically zero and Robin rim values are recorded in the
    metadata).  Raises NonConvergenceError if conjugate gradients fail
    to reach the requested relative residual.
    """
    matrix, rhs, n_rings = _assemble(problem)
    u, info = spla.cg(matrix, rhs, rtol=rel_tol, atol=0.0, maxiter=max_iter)
    residual = float(np.linalg.norm(rhs - matrix @ u))
    scale = float(np.linalg.norm(rhs))
    if info != 0:
        raise NonConvergenceError(
            f"conjugate gradients stopped after {max_iter} iterations",
            achieved_residual=residual / scale if scale else residual,
        )
    n, m = problem.n_r, problem.n_theta
    dr = 1.0 / n
    rings = u.reshape(n_rings, m)
    origin = float(rings[0].mean())

    interior = n - 1  # rings strictly inside the disk
    values = np.empty((interior + 1, m))
    values[0, :] = origin
    values[1:, :] = rings[:interior]
    radii = dr * np.arange(0, interior + 1)
    angles = -math.pi + (TWO_PI / m) * np.arange(m)
    grid = EvaluationGrid(radii, angles, allow_near_boundary=True)
    meta = {
        "operator": "solve_steady_state",
        "source": problem.source.to_config(),
        "conductivity": problem.conductivity,
        "boundary": problem.boundary.describe(),
        "mesh": {"n_r": n, "n_theta": m},
        "solver": {"rel_tol": rel_tol, "residual": residual / scale if scale else residual},
    }
    if problem.boundary.tag == "robin":
        meta["rim_values_mean"] = float(rings[-1].mean())
    ok = np.ones_like(values, dtype=bool)
    return Field(grid=grid, values=values, converged=ok, errors=np.zeros_like(values), meta=meta)


def conjecture_run(
    source: SourceFunction,
    boundary: BoundaryCondition = BoundaryCondition("dirichlet_zero"),
    conductivity: float = 1.0,
    mesh: tuple = (128, 256),
    annulus: tuple = (0.1, 0.8),
    comparison_grid: tuple = (12, 32),
    spec: QuadratureSpec | None = None,
):
    """Run the comparison and return (report, solver field, transform field).

    The transform side uses the plain (prefactor 1) area transform, and
    the multiplicative constant of the comparison is estimated by least
    squares rather than assumed.
    """
    spec = spec or QuadratureSpec()
    problem = HeatProblem(
        source=source, conductivity=conductivity, boundary=boundary,
        n_r=mesh[0], n_theta=mesh[1],
    )
    u_fd = solve_steady_state(problem)
    grid = EvaluationGrid.regular(
        n_r=comparison_grid[0], n_theta=comparison_grid[1],
        r_max=annulus[1], r_min=annulus[0],
    )
    u_q = q_transform(source, grid, prefactor=1.0, spec=spec)

    mask = u_q.converged
    q_pts = u_q.values[mask]
    fd_pts = u_fd.interpolate(
        grid.radii[:, None] * np.ones_like(grid.angles)[None, :],
        np.ones_like(grid.radii)[:, None] * grid.angles[None, :],
    )[mask]

    q_norm_sq = float(np.dot(q_pts, q_pts))
    if q_norm_sq < 1e-300 or np.allclose(q_pts, 0.0, atol=1e-14):
        report = ConjectureReport(
            correlation=math.nan,
            scale_factor=0.0,
            residual_rms=float(np.sqrt(np.mean(fd_pts**2))),
            boundary_condition=boundary.describe(),
            degenerate=True,
            n_points=int(q_pts.size),
        )
        return report, u_fd, u_q
    scale = float(np.dot(fd_pts, q_pts) / q_norm_sq)
    residual_rms = float(np.sqrt(np.mean((fd_pts - scale * q_pts) ** 2)))
    if np.ptp(q_pts) == 0.0 or np.ptp(fd_pts) == 0.0:
        correlation = math.nan  # constant field: correlation undefined
    else:
        correlation = float(np.corrcoef(fd_pts, q_pts)[0, 1])
    report = ConjectureReport(
        correlation=correlation,
        scale_factor=scale,
        residual_rms=residual_rms,
        boundary_condition=boundary.describe(),
        degenerate=False,
        n_points=int(q_pts.size),
    )
    return report, u_fd, u_q


def conjecture_compare(
    source: SourceFunction,
    boundary: BoundaryCondition = BoundaryCondition("dirichlet_zero"),
    **kwargs,
) -> ConjectureReport:
    """Quantitative comparison of solver output against the area transform."""
    return conjecture_run(source, boundary, **kwargs)[0]


def radial_dirichlet_exact(r):
    """Equilibrium for unit source, unit conductivity, zero rim: (1-r^2)/4."""
    return (1.0 - np.asarray(r) ** 2) / 4.0


def radial_robin_exact(r, h: float):
    """Equilibrium for unit source under Newton cooling: (1-r^2)/4 + 1/(2h)."""
    return (1.0 - np.asarray(r) ** 2) / 4.0 + 1.0 / (2.0 * h)


def _max_error_vs_radial(field: Field, exact_fn) -> float:
    exact = exact_fn(field.grid.radii)[:, None]
    return float(np.max(np.abs(field.values - exact)))


def heat_suite_records(records, record_fn):
    """Solver invariants contributed to the cross-module suite."""
    unit = CharacteristicDisk(1.0)
    dirichlet = BoundaryCondition("dirichlet_zero")

    errs = {}
    for n in (64, 128):
        fld = solve_steady_state(HeatProblem(unit, 1.0, dirichlet, n, 2 * n))
        errs[n] = _max_error_vs_radial(fld, radial_dirichlet_exact)
    record_fn(records, "heat.dirichlet_accuracy", errs[128], 1e-3,
              note="unit source vs (1-r^2)/4 at 128x256")
    record_fn(records, "heat.solver_order", errs[64] / errs[128], 3.5, comparator=">=",
              note="doubling resolution divides the max error by >= 3.5")

    robin = BoundaryCondition("robin", h=1.0)
    fld = solve_steady_state(HeatProblem(unit, 1.0, robin, 128, 256))
    record_fn(records, "heat.robin_accuracy",
              _max_error_vs_radial(fld, lambda r: radial_robin_exact(r, 1.0)), 1e-3)

    bump = CharacteristicDisk(0.25)
    fld = solve_steady_state(HeatProblem(bump, 1.0, dirichlet, 64, 128))
    record_fn(records, "heat.max_principle", float(np.min(fld.values)), -1e-10,
              comparator=">=", note="non-negative source gives non-negative field")

    fld_a = solve_steady_state(HeatProblem(bump, 1.0, dirichlet, 32, 64))
    fld_b = solve_steady_state(HeatProblem(unit, 1.0, dirichlet, 32, 64))
    from .sources import SourceSum

    fld_ab = solve_steady_state(
        HeatProblem(SourceSum(((1.0, bump), (2.0, unit))), 1.0, dirichlet, 32, 64)
    )
    lin_err = float(np.max(np.abs(fld_ab.values - fld_a.values - 2.0 * fld_b.values)))
    record_fn(records, "heat.linearity", lin_err, 1e-8)

    fld_c = solve_steady_state(HeatProblem(bump, 1.0, dirichlet, 32, 64))
    record_fn(records, "heat.determinism",
              float(np.max(np.abs(fld_c.values - fld_a.values))), 0.0,
              note="identical inputs give bitwise-identical fields")
