"""Norms, harmonicity checking, and the runnable invariant suite.

``laplacian_residual`` measures how far a sampled function is from
harmonic using the polar form of the Laplacian,

    u_rr + u_r / r + u_tt / r^2,

discretized with second-order central differences.  Checks run on an
annulus only: the origin has a coordinate singularity and the outermost
radii carry the most quadrature noise.

Disk norms truncate at a configurable radius and report a crude tail
bound (sampled sup on the tail times tail area) instead of attempting
improper integrals of grid-sampled fields.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import (
    DomainError,
    IncompatibleKindError,
    StencilOutOfRangeError,
)
from .geometry import PolarRectangle
from . import kernels as _kernels
from .quadrature import (
    QuadratureSpec,
    integrate_angular,
    integrate_polar,
    integrate_singular_radial,
    midpoint_oracle,
)
from .sources import (
    BoundaryFunction,
    SourceFunction,
    catalog_boundary_functions,
    catalog_q_sources,
    figure_case,
    parse_source_config,
    serialize_config,
)
from .transforms import Field, poisson_point, q_point, source_mass

TWO_PI = 2.0 * math.pi

NORM_KINDS = ("bergman_weighted", "harmonic_bergman_l2", "hardy_sup", "circle_l2")


@dataclass(frozen=True)
class NormSpec:
    """Which norm to compute and where to truncate disk integrals."""

    kind: str
    p: float = 2.0
    alpha: float = 0.0
    truncation_radius: float = 0.999

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise IncompatibleKindError(f"unknown norm kind {self.kind!r}")
        if self.p < 1.0:
            raise DomainError(f"p must be >= 1, got {self.p}")
        if self.alpha <= -1.0:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        if not 0.0 < self.truncation_radius <= 0.999:
            raise DomainError("truncation radius must lie in (0, 0.999]")


@dataclass(frozen=True)
class NormReport:
    value: float
    tail_bound: float
    truncation_radius: float


@dataclass
class HarmonicityReport:
    max_abs_residual: float
    normalized_max_residual: float
    residual_grid: np.ndarray
    annulus: tuple
    stencil_spacing: tuple


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------


def _partition_cells(source: SourceFunction, r_cap: float):
    """Cells on which the source is smooth, clipped to rho <= r_cap.

    Edges come from the pieces themselves, so rectangles with angle
    windows outside [-pi, pi] are covered too; cells intersecting no
    piece are dropped.
    """
    pieces = source.pieces()
    r_edges = set()
    t_edges = set()
    for p in pieces:
        if p.rect.r_lo >= r_cap:
            continue
        r_edges.update((p.rect.r_lo, min(p.rect.r_hi, r_cap)))
        t_edges.update((p.rect.theta_lo, p.rect.theta_hi))
    r_edges = sorted(r_edges)
    t_edges = sorted(t_edges)
    cells = []
    for r_lo, r_hi in zip(r_edges[:-1], r_edges[1:]):
        for t_lo, t_hi in zip(t_edges[:-1], t_edges[1:]):
            mid_r, mid_t = 0.5 * (r_lo + r_hi), 0.5 * (t_lo + t_hi)
            if any(p.rect.contains(mid_r, mid_t) for p in pieces):
                cells.append(PolarRectangle(r_lo, r_hi, t_lo, t_hi))
    return cells


def _source_norm_report(source, spec: NormSpec, quad: QuadratureSpec) -> NormReport:
    r_cap = spec.truncation_radius
    total = 0.0
    for cell in _partition_cells(source, r_cap):
        res = integrate_polar(
            lambda rho, phi: np.abs(source.values(rho, phi)) ** spec.p
            * (1.0 - rho) ** spec.alpha,
            cell,
            quad,
        )
        total += res.value
    # crude tail bound: sampled sup on the tail annulus times tail area
    tail = 0.0
    t_lo = min(p.rect.theta_lo for p in source.pieces())
    t_hi = max(p.rect.theta_hi for p in source.pieces())
    rho_s = np.linspace(r_cap, 1.0, 33)[:-1][:, None]
    phi_s = np.linspace(t_lo, t_hi, 65)[None, :]
    with np.errstate(divide="ignore", over="ignore"):
        tail_vals = np.abs(source.values(rho_s, phi_s)) ** spec.p * (1.0 - rho_s) ** spec.alpha
    sup = float(np.max(tail_vals))
    if math.isfinite(sup):
        tail = sup * 0.5 * (1.0 - r_cap**2) * TWO_PI
    else:
        tail = math.inf
    return NormReport(total ** (1.0 / spec.p), tail, r_cap)


def _field_norm_report(fld: Field, spec: NormSpec) -> NormReport:
    radii = fld.grid.radii
    mask = radii <= spec.truncation_radius
    radii = radii[mask]
    vals = np.abs(fld.values[mask]) ** spec.p * (1.0 - radii[:, None]) ** spec.alpha
    d_theta = TWO_PI / fld.grid.n_theta
    ring = vals.sum(axis=1) * d_theta  # periodic rectangle rule in theta
    total = float(np.trapezoid(ring * radii, radii))
    sup_outer = float(np.max(np.abs(fld.values[mask][-1]))) ** spec.p
    tail = sup_outer * 0.5 * (1.0 - radii[-1] ** 2) * TWO_PI
    return NormReport(total ** (1.0 / spec.p), tail, float(radii[-1]))


def _circle_l2_report(f: BoundaryFunction, quad: QuadratureSpec) -> NormReport:
    total = 0.0
    for arc in f.arcs():
        res = integrate_angular(
            lambda phi, fn=arc.fn: np.asarray(fn(phi)) ** 2, arc.lo, arc.hi, quad
        )
        total += res.value
    return NormReport(math.sqrt(total), 0.0, 1.0)


def circle_integral_of_square(u_of_theta, quad: QuadratureSpec | None = None) -> float:
    """integral over [-pi, pi) of u(theta)^2 d theta."""
    quad = quad or QuadratureSpec()
    res = integrate_angular(lambda t: np.asarray(u_of_theta(t)) ** 2, -math.pi, math.pi, quad)
    return res.value


def _hardy_report(u, spec: NormSpec, quad: QuadratureSpec, radii=None) -> NormReport:
    if isinstance(u, Field):
        radii = u.grid.radii if radii is None else np.asarray(radii)
        d_theta = TWO_PI / u.grid.n_theta
        sup = max(float(np.sum(row**2) * d_theta) for row in u.values)
        return NormReport(sup, 0.0, float(u.grid.radii[-1]))
    if radii is None:
        radii = np.linspace(0.0, spec.truncation_radius, 17)
    sup = 0.0
    for r in radii:
        val = circle_integral_of_square(lambda t: u(float(r), t), quad)
        sup = max(sup, val)
    return NormReport(sup, 0.0, float(np.max(radii)))


def norm_report(f, spec: NormSpec, quad: QuadratureSpec | None = None, radii=None) -> NormReport:
    """Norm plus truncation-tail report; see ``norm`` for the dispatch rules."""
    quad = quad or QuadratureSpec()
    if spec.kind == "circle_l2":
        if not isinstance(f, BoundaryFunction):
            raise IncompatibleKindError("circle_l2 applies to boundary functions")
        return _circle_l2_report(f, quad)
    if spec.kind == "hardy_sup":
        if isinstance(f, (SourceFunction, BoundaryFunction)):
            raise IncompatibleKindError("hardy_sup applies to fields or callables u(r, theta)")
        return _hardy_report(f, spec, quad, radii)
    # disk norms
    eff = spec if spec.kind == "bergman_weighted" else NormSpec(
        "bergman_weighted", 2.0, 0.0, spec.truncation_radius
    )
    if isinstance(f, SourceFunction):
        return _source_norm_report(f, eff, quad)
    if isinstance(f, Field):
        return _field_norm_report(f, eff)
    raise IncompatibleKindError(
        f"{spec.kind} applies to sources or fields, got {type(f).__name__}"
    )


def norm(f, spec: NormSpec, quad: QuadratureSpec | None = None) -> float:
    """Norm of a source/field/boundary function under the given spec.

    bergman_weighted: p-th root of the (1-|z|)^alpha weighted disk
    integral, truncated; harmonic_bergman_l2: the same with p=2, alpha=0;
    hardy_sup: the sup over sampled radii of the circle integral of u^2
    (the integral itself, not its square root); circle_l2: boundary L2
    norm without the 1/2pi normalization.
    """
    return norm_report(f, spec, quad).value


def bergman_norm(f, p: float = 2.0, alpha: float = 0.0, truncation_radius: float = 0.999):
    return norm(f, NormSpec("bergman_weighted", p, alpha, truncation_radius))


def hA2_norm(f, truncation_radius: float = 0.999):
    return norm(f, NormSpec("harmonic_bergman_l2", truncation_radius=truncation_radius))


def hardy_norm(u, truncation_radius: float = 0.999, radii=None):
    return norm_report(
        u, NormSpec("hardy_sup", truncation_radius=truncation_radius), radii=radii
    ).value


# ---------------------------------------------------------------------------
# Harmonicity via the discrete polar Laplacian
# ---------------------------------------------------------------------------


def laplacian_residual(
    field_or_callable,
    annulus: tuple = (0.1, 0.8),
    spacings: tuple | None = None,
    n_r: int = 8,
    n_theta: int = 16,
) -> HarmonicityReport:
    """Central-difference residual of the polar Laplacian on an annulus.

    For a callable u(r, theta), samples an n_r x n_theta grid of stencil
    centers inside the annulus using the given spacings (h_r, h_theta).
    For a Field, uses the field's own grid spacings and its sample values
    (spacings must then be None).  Second-order accurate: the residual of
    a smooth harmonic function scales like h^2.
    """
    r_min, r_max = annulus
    if not 0.0 < r_min < r_max < 1.0:
        raise DomainError(f"annulus must satisfy 0 < r_min < r_max < 1, got {annulus}")

    if isinstance(field_or_callable, Field):
        if spacings is not None:
            raise DomainError("spacings are taken from the field grid; pass None")
        return _field_laplacian(field_or_callable, annulus)

    u = field_or_callable
    if spacings is None:
        raise DomainError("callable input requires explicit spacings (h_r, h_theta)")
    h_r, h_t = spacings
    if r_min < 2.0 * h_r:
        raise StencilOutOfRangeError(
            f"stencil would cross the origin: need r_min >= 2*h_r, got {r_min} < {2*h_r}"
        )
    radii = np.linspace(r_min, r_max, n_r)
    angles = np.linspace(-math.pi, math.pi, n_theta, endpoint=False)
    rr = radii[:, None]
    tt = angles[None, :]
    center = np.asarray(u(rr, tt), dtype=float)
    r_plus = np.asarray(u(rr + h_r, tt), dtype=float)
    r_minus = np.asarray(u(rr - h_r, tt), dtype=float)
    t_plus = np.asarray(u(rr, tt + h_t), dtype=float)
    t_minus = np.asarray(u(rr, tt - h_t), dtype=float)
    residual = (
        (r_plus - 2.0 * center + r_minus) / h_r**2
        + (r_plus - r_minus) / (2.0 * h_r * rr)
        + (t_plus - 2.0 * center + t_minus) / (h_t**2 * rr**2)
    )
    scale = float(np.max(np.abs(center)))
    max_res = float(np.max(np.abs(residual)))
    return HarmonicityReport(
        max_abs_residual=max_res,
        normalized_max_residual=max_res / scale if scale > 0 else max_res,
        residual_grid=residual,
        annulus=annulus,
        stencil_spacing=(h_r, h_t),
    )


def _field_laplacian(fld: Field, annulus) -> HarmonicityReport:
    radii = fld.grid.radii
    angles = fld.grid.angles
    dr = np.diff(radii)
    dt = np.diff(angles)
    if np.ptp(dr) > 1e-12 * dr[0] or np.ptp(dt) > 1e-12 * dt[0]:
        raise DomainError("field-based residuals require a uniform grid")
    h_r, h_t = float(dr[0]), float(dt[0])
    v = fld.values
    inner = slice(1, -1)
    rr = radii[inner][:, None]
    t_plus = np.roll(v, -1, axis=1)[inner]
    t_minus = np.roll(v, 1, axis=1)[inner]
    residual = (
        (v[2:] - 2.0 * v[inner] + v[:-2]) / h_r**2
        + (v[2:] - v[:-2]) / (2.0 * h_r * rr)
        + (t_plus - 2.0 * v[inner] + t_minus) / (h_t**2 * rr**2)
    )
    mask = (radii[inner] >= annulus[0]) & (radii[inner] <= annulus[1])
    if not np.any(mask):
        raise StencilOutOfRangeError("no interior grid radii inside the annulus")
    residual = residual[mask]
    scale = float(np.max(np.abs(v[inner][mask])))
    max_res = float(np.max(np.abs(residual)))
    return HarmonicityReport(
        max_abs_residual=max_res,
        normalized_max_residual=max_res / scale if scale > 0 else max_res,
        residual_grid=residual,
        annulus=annulus,
        stencil_spacing=(h_r, h_t),
    )


# ---------------------------------------------------------------------------
# Invariant suite
# ---------------------------------------------------------------------------


@dataclass
class InvariantRecord:
    id: str
    measured: float
    threshold: float
    comparator: str  # "<=" or ">="
    passed: bool
    note: str = ""


@dataclass
class SuiteReport:
    records: list

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> str:
        return json.dumps(
            {
                "all_passed": self.all_passed,
                "records": [
                    {
                        "id": r.id,
                        "measured": r.measured,
                        "threshold": r.threshold,
                        "comparator": r.comparator,
                        "passed": r.passed,
                        "note": r.note,
                    }
                    for r in self.records
                ],
            },
            indent=2,
        )


@dataclass
class SuiteConfig:
    """Knobs for the invariant suite; defaults keep the run under a few
    minutes.  ``q_kernel_fn`` exists so tests can inject a corrupted
    kernel and watch the normalization check fail."""

    r_max: float = 0.9
    quad: QuadratureSpec = dataclass_field(default_factory=QuadratureSpec)
    q_kernel_fn: object = None
    include_heat: bool = True
    reproducing_degree: int = 3
    seed: int = 20240601


def _record(records, rec_id, measured, threshold, comparator="<=", note=""):
    if comparator == "<=":
        passed = measured <= threshold
    elif comparator == ">=":
        passed = measured >= threshold
    else:
        raise ValueError(comparator)
    records.append(InvariantRecord(rec_id, float(measured), float(threshold), comparator, bool(passed), note))


def run_invariant_suite(config: SuiteConfig | None = None) -> SuiteReport:
    """Run the cross-module invariant checks and report machine-readably.

    Failures are data, not exceptions; the CLI maps them to a nonzero
    exit code.
    """
    cfg = config or SuiteConfig()
    q_fn = cfg.q_kernel_fn or _kernels.q_kernel
    quad = cfg.quad
    records = []
    rng = np.random.default_rng(cfg.seed)

    # --- kernels ---------------------------------------------------------
    rs = np.linspace(0.0, 0.99, 34)[:, None]
    thetas = np.linspace(-math.pi, math.pi, 41)[None, :]
    p_plus = _kernels.poisson_kernel(rs, thetas)
    p_minus = _kernels.poisson_kernel(rs, -thetas)
    _record(records, "kernels.poisson.evenness", np.max(np.abs(p_plus - p_minus)), 1e-12)
    q_plus = q_fn(rs, thetas)
    q_minus = q_fn(rs, -thetas)
    _record(records, "kernels.q.evenness", np.max(np.abs(q_plus - q_minus)), 1e-12)

    rel = np.max(np.abs(_kernels.poisson_kernel(rs, thetas + TWO_PI) - p_plus) / np.abs(p_plus))
    _record(records, "kernels.poisson.periodicity", rel, 1e-10, note="relative")
    rel = np.max(np.abs(q_fn(rs, thetas + TWO_PI) - q_plus) / np.maximum(np.abs(q_plus), 1e-3))
    _record(records, "kernels.q.periodicity", rel, 1e-10, note="relative")

    _record(records, "kernels.poisson.positivity", np.min(p_plus), 0.0, comparator=">=",
            note="strictly positive on dense sample")

    worst_min = -math.inf
    for s in (0.8, 0.85, 0.9, 0.95, 0.99):
        psi = np.linspace(0.0, math.pi, 2001)
        worst_min = max(worst_min, float(np.min(q_fn(s, psi))))
    _record(records, "kernels.q.sign_change", worst_min, -1e-12,
            note="min over psi must be negative for every s >= 0.8")

    rs9 = np.linspace(0.0, 0.9, 19)[:, None]
    series = _kernels.poisson_kernel_series(np.broadcast_to(rs9, (19, 41)), thetas, n_terms=400)
    _record(records, "kernels.poisson.series",
            np.max(np.abs(series - _kernels.poisson_kernel(rs9, thetas))), 1e-10)

    ss = np.linspace(0.0, 0.99, 34)
    peak_vals = q_fn(ss, 0.0)
    _record(records, "kernels.q.peak_value",
            np.max(np.abs(peak_vals * (1.0 - ss) ** 2 - 1.0)), 1e-12,
            note="Q(s, 0) = (1-s)^-2")
    psi_grid = np.linspace(-math.pi, math.pi, 801)
    peak_offsets = [abs(psi_grid[np.argmax(np.abs(q_fn(s, psi_grid)))]) for s in (0.3, 0.6, 0.9)]
    _record(records, "kernels.q.peak_location", max(peak_offsets), 1e-12,
            note="|Q| peaks at psi = 0")

    # --- quadrature ------------------------------------------------------
    rect = PolarRectangle(0.2, 0.7, -0.5, 1.3)
    worst = 0.0
    for m in (0, 3, 10):
        for k in (0, 4, 10):
            exact_r = (rect.r_hi ** (m + 2) - rect.r_lo ** (m + 2)) / (m + 2)
            if k == 0:
                exact_t = rect.theta_hi - rect.theta_lo
            else:
                exact_t = (math.sin(k * rect.theta_hi) - math.sin(k * rect.theta_lo)) / k
            res = integrate_polar(
                lambda rho, phi, m=m, k=k: rho**m * np.cos(k * phi), rect, quad
            )
            worst = max(worst, abs(res.value - exact_r * exact_t))
    _record(records, "quadrature.exactness", worst, 1e-12,
            note="rho^m cos(k phi), m,k <= 10")

    whole = integrate_polar(lambda r, p: np.exp(r) * np.cos(p), rect, quad).value
    left = integrate_polar(
        lambda r, p: np.exp(r) * np.cos(p), PolarRectangle(0.2, 0.45, -0.5, 1.3), quad
    ).value
    right = integrate_polar(
        lambda r, p: np.exp(r) * np.cos(p), PolarRectangle(0.45, 0.7, -0.5, 1.3), quad
    ).value
    _record(records, "quadrature.additivity", abs(whole - (left + right)), 1e-12)

    region = PolarRectangle(0.5, 1.0, 0.0, 1.0)
    smooth = lambda r, p: np.cos(p) * np.broadcast_to(r, np.broadcast_shapes(np.shape(r), np.shape(p))) ** 2
    sub = integrate_singular_radial(smooth, 1e-6, region, quad).value
    plain = integrate_polar(smooth, region, quad).value
    _record(records, "quadrature.substitution_beta_zero_limit", abs(sub - plain), 1e-6)

    disk = PolarRectangle.full_disk()
    worst = 0.0
    for r in np.linspace(0.0, cfg.r_max, 5):
        for theta in (-2.0, 0.4):
            res = integrate_polar(
                lambda rho, phi, r=r, theta=theta: q_fn(r * rho, theta - phi) / math.pi,
                disk,
                quad,
            )
            worst = max(worst, abs(res.value - 1.0))
    _record(records, "quadrature.q_normalization", worst, 1e-6,
            note="(1/pi) iint Q(r rho, theta - phi) rho = 1 for all r, theta")

    worst = 0.0
    for fig_id, (r, theta) in ((4, (0.6, 0.5)), (9, (0.85, -0.2))):
        case = figure_case(fig_id).payload
        q_case = case.q if hasattr(case, "q") else case
        gap, err = oracle_disagreement(q_case.source, r, theta, q_case.prefactor,
                                       quad=quad)
        worst = max(worst, gap - max(1e-6, 10.0 * err))
    _record(records, "quadrature.oracle_agreement", worst, 0.0,
            note="adaptive vs 2000x4000 midpoint within max(1e-6, 10*err) "
                 "on regular catalog integrands")

    # --- sources ---------------------------------------------------------
    mismatches = 0
    for fig_id in range(1, 16):
        case = figure_case(fig_id)
        for obj in _catalog_objects(case):
            if parse_source_config(serialize_config(obj)) != obj:
                mismatches += 1
    _record(records, "sources.roundtrip", mismatches, 0.0)

    missing = sum(1 for fig_id in range(1, 16) if figure_case(fig_id).id != fig_id)
    _record(records, "sources.catalog_complete", missing, 0.0)

    worst_norm = 0.0
    for q_case in catalog_q_sources().values():
        value = norm(q_case.source, NormSpec("harmonic_bergman_l2", truncation_radius=0.999), quad)
        if not math.isfinite(value):
            worst_norm = math.inf
            break
        worst_norm = max(worst_norm, value)
    _record(records, "sources.square_integrable", worst_norm, 20.0,
            note="largest truncated L2 norm across the catalog; must be finite")

    # --- transforms ------------------------------------------------------
    worst = 0.0
    for q_case in catalog_q_sources().values():
        mass = source_mass(q_case.source, quad)
        for theta in (0.0, 2.0):
            v, _, _ = q_point(q_case.source, 0.0, theta, q_case.prefactor, quad)
            worst = max(worst, abs(v - q_case.prefactor * mass))
    _record(records, "transforms.center_identity", worst, 1e-8,
            note="transform value at the origin equals prefactor * source mass")

    worst = 0.0
    for p_case in catalog_boundary_functions().values():
        v, _, _ = poisson_point(p_case.boundary, 0.0, 0.0, quad)
        average = sum(
            integrate_angular(arc.fn, arc.lo, arc.hi, quad).value
            for arc in p_case.boundary.arcs()
        ) / TWO_PI
        worst = max(worst, abs(v - average))
    _record(records, "transforms.mean_value", worst, 1e-8)

    from .sources import CharacteristicRect, SourceSum  # local names for the checks

    rect_a = CharacteristicRect(PolarRectangle(0.3, 0.6, -0.4, 0.9))
    rect_b = CharacteristicRect(PolarRectangle(0.1, 0.8, 1.2, 2.0))
    combo = SourceSum(((0.7, rect_a), (-1.3, rect_b)))
    worst = 0.0
    for r, theta in ((0.5, 0.3), (0.8, -2.2)):
        v_sum, _, _ = q_point(combo, r, theta, 1.0, quad)
        v_a, _, _ = q_point(rect_a, r, theta, 1.0, quad)
        v_b, _, _ = q_point(rect_b, r, theta, 1.0, quad)
        worst = max(worst, abs(v_sum - (0.7 * v_a - 1.3 * v_b)))
    _record(records, "transforms.linearity", worst, 1e-10)

    delta = 0.35
    rect_r = CharacteristicRect(PolarRectangle(0.3, 0.6, -0.4 + delta, 0.9 + delta))
    worst = 0.0
    for r, theta in ((0.5, 0.3), (0.75, 1.0)):
        v_rot, _, _ = q_point(rect_r, r, theta + delta, 1.0, quad)
        v_orig, _, _ = q_point(rect_a, r, theta, 1.0, quad)
        worst = max(worst, abs(v_rot - v_orig))
    _record(records, "transforms.rotation_equivariance", worst, 1e-8)

    from .transforms import CallableSource

    worst = 0.0
    for n in range(1, cfg.reproducing_degree + 1):
        for trig, name in ((np.cos, "cos"), (np.sin, "sin")):
            u = CallableSource(lambda rho, phi, n=n, trig=trig: rho**n * trig(n * phi))
            for r, theta in ((0.4, 0.7), (0.8, -1.9)):
                v, _, _ = q_point(u, r, theta, 2.0 / math.pi, quad)
                worst = max(worst, abs(v - r**n * trig(n * theta)))
    _record(records, "transforms.reproducing", worst, 1e-6,
            note=f"harmonic polynomials up to degree {cfg.reproducing_degree}")

    # --- verify ----------------------------------------------------------
    exact = lambda rr, tt: rr**5 * np.cos(5 * tt)
    res_coarse = laplacian_residual(exact, (0.2, 0.8), (0.02, 0.02)).max_abs_residual
    res_fine = laplacian_residual(exact, (0.2, 0.8), (0.01, 0.01)).max_abs_residual
    ratio = res_coarse / res_fine
    _record(records, "verify.stencil_convergence_low", ratio, 3.5, comparator=">=",
            note="halving h divides the residual by ~4")
    _record(records, "verify.stencil_convergence_high", ratio, 4.5,
            note="upper side of the second-order window")

    worst = 0.0
    fig4_source = figure_case(4).payload.source
    prev = None
    for alpha in (0.0, 0.5, 1.0):
        val = norm(fig4_source, NormSpec("bergman_weighted", 2.0, alpha, 0.999), quad)
        if prev is not None:
            worst = max(worst, val - prev)
        prev = val
    _record(records, "verify.norm_alpha_monotonic", worst, 1e-12,
            note="weighted norm non-increasing in alpha for bounded sources")

    boundary = figure_case(8).payload.boundary
    radii = np.linspace(0.0, 0.95, 9)
    integrals = []
    for r in radii:
        integrals.append(
            circle_integral_of_square(
                lambda t, r=r: np.array(
                    [poisson_point(boundary, float(r), float(ti), quad)[0] for ti in np.atleast_1d(t)]
                ),
                quad,
            )
        )
    mono_violation = max(
        (integrals[i] - integrals[i + 1] for i in range(len(integrals) - 1)), default=0.0
    )
    _record(records, "verify.hardy_monotone", mono_violation, 1e-8,
            note="circle integrals of the harmonic extension increase with r")
    boundary_l2_sq = norm(boundary, NormSpec("circle_l2"), quad) ** 2
    _record(records, "verify.hardy_bounded", max(integrals) - boundary_l2_sq, 1e-6,
            note="sup_r circle integral <= boundary integral")

    # --- heat ------------------------------------------------------------
    if cfg.include_heat:
        from .heatlab import heat_suite_records

        heat_suite_records(records, _record)

    return SuiteReport(records)


def _catalog_objects(case):
    from .sources import PairedCase, PoissonCase, QCase

    payload = case.payload
    if isinstance(payload, QCase):
        return [payload.source]
    if isinstance(payload, PoissonCase):
        return [payload.boundary]
    if isinstance(payload, PairedCase):
        return [payload.poisson.boundary, payload.q.source]
    return []


def oracle_disagreement(source: SourceFunction, r: float, theta: float,
                        prefactor: float = 1.0,
                        n_radial: int = 2000, n_angular: int = 4000,
                        quad: QuadratureSpec | None = None):
    """|adaptive - midpoint oracle| for one transform evaluation.

    Only valid for regular (non-singular) sources: the plain midpoint
    rule does not converge usefully against (1-rho)^(-beta) factors.
    """
    quad = quad or QuadratureSpec()
    adaptive, err, _ = q_point(source, r, theta, prefactor, quad)
    brute = 0.0
    for piece in source.pieces():
        if piece.beta is not None:
            raise DomainError("midpoint comparison requires a regular source")
        brute += piece.coef * midpoint_oracle(
            lambda rho, phi, fn=piece.fn: fn(rho, phi) * _kernels.q_kernel(r * rho, theta - phi),
            piece.rect,
            n_radial,
            n_angular,
        )
    return abs(adaptive - prefactor * brute), err
