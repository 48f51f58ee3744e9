"""Adaptive tensor Gauss-Legendre quadrature over polar rectangles.

Conventions baked in here, not in integrands:

* the Jacobian rho of the measure rho drho dphi is applied by the
  quadrature layer -- integrands are plain functions g(rho, phi);
* integrands must accept numpy arrays and broadcast: they are called with
  a column of radii and a row of angles and must return the (n_r, n_phi)
  tensor of values;
* per-panel error = |G_n - G_2n| (same rule at doubled node counts); a
  panel is accepted when that difference drops below the absolute
  per-panel tolerance, otherwise it is bisected in the direction whose
  refinement moved the estimate most (ties go to the angular direction,
  where the integral kernels of this package peak);
* the final value is an fsum over accepted panels in a fixed depth-first
  order, so results are deterministic no matter how panels would be
  scheduled.

Integrable endpoint singularities (1 - rho)^(-beta) at rho = 1 are
handled by ``integrate_singular_radial`` through the substitution
t = (1 - rho)^(1 - beta), which makes the transformed integrand bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidExponentError, InvalidRegionError, NonFiniteError
from .geometry import PolarRectangle


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and refinement controls governing one integral.

    ``adaptive_tol`` is an absolute per-panel tolerance; the error
    estimate of a converged result is bounded by adaptive_tol times the
    number of panels used.  ``singularity_exponent`` flags an integrand
    factor (1 - rho)^(-beta) handled by substitution.
    """

    nodes_radial: int = 32
    nodes_angular: int = 64
    adaptive_tol: float = 1e-9
    max_depth: int = 12
    singularity_exponent: float | None = None

    def __post_init__(self):
        if self.nodes_radial < 1 or self.nodes_angular < 1:
            raise InvalidRegionError("node counts must be positive")
        if not self.adaptive_tol > 0.0:
            raise InvalidRegionError("adaptive_tol must be positive")
        if not 1 <= self.max_depth <= 30:
            raise InvalidRegionError("max_depth must lie in [1, 30]")
        if self.singularity_exponent is not None and not (
            0.0 < self.singularity_exponent < 1.0
        ):
            raise InvalidExponentError("singularity exponent must lie in (0, 1)")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels_used: int
    converged: bool


@lru_cache(maxsize=64)
def _gauss_rule(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _map_nodes(lo: float, hi: float, n: int):
    nodes, weights = _gauss_rule(n)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return mid + half * nodes, half * weights


def _tensor_eval(integrand, r_lo, r_hi, p_lo, p_hi, n_r, n_p, jacobian):
    """One tensor Gauss-Legendre evaluation over a panel."""
    rho, w_r = _map_nodes(r_lo, r_hi, n_r)
    phi, w_p = _map_nodes(p_lo, p_hi, n_p)
    values = np.asarray(integrand(rho[:, None], phi[None, :]), dtype=float)
    values = np.broadcast_to(values, (n_r, n_p))
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(
            f"integrand returned NaN/inf on panel [{r_lo},{r_hi}]x[{p_lo},{p_hi}]"
        )
    if jacobian:
        values = values * rho[:, None]
    return float(w_r @ values @ w_p)


def _adaptive_tensor(integrand, r_lo, r_hi, p_lo, p_hi, spec, jacobian):
    """Adaptive bisection engine shared by the public entry points."""
    n_r, n_p = spec.nodes_radial, spec.nodes_angular
    stack = [(r_lo, r_hi, p_lo, p_hi, 0)]
    values = []
    errors = []
    all_converged = True
    while stack:
        a, b, c, d, depth = stack.pop()
        coarse = _tensor_eval(integrand, a, b, c, d, n_r, n_p, jacobian)
        fine = _tensor_eval(integrand, a, b, c, d, 2 * n_r, 2 * n_p, jacobian)
        err = abs(fine - coarse)
        if err <= spec.adaptive_tol or depth >= spec.max_depth:
            values.append(fine)
            errors.append(err)
            if err > spec.adaptive_tol:
                all_converged = False
            continue
        # Probe which direction is under-resolved: refine each separately
        # and split where the estimate moves most.  Angular wins ties --
        # the kernels peak in angle as r*rho -> 1.
        move_r = abs(_tensor_eval(integrand, a, b, c, d, 2 * n_r, n_p, jacobian) - coarse)
        move_p = abs(_tensor_eval(integrand, a, b, c, d, n_r, 2 * n_p, jacobian) - coarse)
        if move_p >= move_r:
            mid = 0.5 * (c + d)
            stack.append((a, b, mid, d, depth + 1))
            stack.append((a, b, c, mid, depth + 1))
        else:
            mid = 0.5 * (a + b)
            stack.append((mid, b, c, d, depth + 1))
            stack.append((a, mid, c, d, depth + 1))
    return QuadratureResult(
        value=math.fsum(values),
        error_estimate=math.fsum(errors),
        panels_used=len(values),
        converged=all_converged,
    )


def integrate_polar(integrand, region: PolarRectangle, spec: QuadratureSpec | None = None):
    """Integrate g(rho, phi) * rho over a polar rectangle adaptively.

    If ``spec.singularity_exponent`` is set, the integrand is understood
    to carry a factor (1 - rho)^(-beta) *in addition* to the regular part
    passed here, and the call is routed through the substitution path
    (the region must then touch rho = 1).
    """
    spec = spec or QuadratureSpec()
    if spec.singularity_exponent is not None:
        return integrate_singular_radial(integrand, spec.singularity_exponent, region, spec)
    return _adaptive_tensor(
        integrand, region.r_lo, region.r_hi, region.theta_lo, region.theta_hi, spec, True
    )


def integrate_singular_radial(
    integrand_regular,
    beta: float,
    region: PolarRectangle,
    spec: QuadratureSpec | None = None,
    include_jacobian: bool = True,
):
    """Integrate g(rho, phi) * (1 - rho)^(-beta) * rho with r_hi = 1.

    Substitutes t = (1 - rho)^(1 - beta), under which the singular factor
    and the Jacobian of the change of variables combine into the constant
    1/(1 - beta); the remaining integrand g(rho(t), phi) * rho(t) is
    bounded.  ``include_jacobian=False`` drops the measure factor rho,
    giving the plain iterated integral (1-D self-test mode).
    """
    spec = spec or QuadratureSpec()
    if not 0.0 < beta < 1.0:
        raise InvalidExponentError(f"beta must lie in (0, 1), got {beta}")
    if region.r_hi != 1.0:
        raise InvalidRegionError("singular radial integration requires r_hi = 1")
    one_minus_beta = 1.0 - beta
    power = 1.0 / one_minus_beta
    t_hi = (1.0 - region.r_lo) ** one_minus_beta

    def transformed(t, phi):
        rho = 1.0 - t**power
        values = np.asarray(integrand_regular(rho, phi), dtype=float)
        if include_jacobian:
            values = values * rho
        return values / one_minus_beta

    inner = QuadratureSpec(
        nodes_radial=spec.nodes_radial,
        nodes_angular=spec.nodes_angular,
        adaptive_tol=spec.adaptive_tol,
        max_depth=spec.max_depth,
    )
    return _adaptive_tensor(
        transformed, 0.0, t_hi, region.theta_lo, region.theta_hi, inner, False
    )


def integrate_angular(integrand, lo: float, hi: float, spec: QuadratureSpec | None = None):
    """1-D adaptive Gauss-Legendre over an angular interval.

    Same panel logic as integrate_polar restricted to the angular
    variable; used for circle integrals (no Jacobian).
    """
    spec = spec or QuadratureSpec()
    if not lo < hi:
        raise InvalidRegionError(f"need lo < hi, got [{lo}, {hi}]")
    n = spec.nodes_angular
    stack = [(lo, hi, 0)]
    values = []
    errors = []
    all_converged = True
    while stack:
        a, b, depth = stack.pop()
        x1, w1 = _map_nodes(a, b, n)
        x2, w2 = _map_nodes(a, b, 2 * n)
        v1 = np.asarray(integrand(x1), dtype=float)
        v2 = np.asarray(integrand(x2), dtype=float)
        if not (np.all(np.isfinite(v1)) and np.all(np.isfinite(v2))):
            raise NonFiniteError(f"integrand returned NaN/inf on [{a}, {b}]")
        coarse = float(w1 @ np.broadcast_to(v1, x1.shape))
        fine = float(w2 @ np.broadcast_to(v2, x2.shape))
        err = abs(fine - coarse)
        if err <= spec.adaptive_tol or depth >= spec.max_depth:
            values.append(fine)
            errors.append(err)
            if err > spec.adaptive_tol:
                all_converged = False
            continue
        mid = 0.5 * (a + b)
        stack.append((mid, b, depth + 1))
        stack.append((a, mid, depth + 1))
    return QuadratureResult(
        value=math.fsum(values),
        error_estimate=math.fsum(errors),
        panels_used=len(values),
        converged=all_converged,
    )


def midpoint_oracle(
    integrand,
    region: PolarRectangle,
    n_radial: int,
    n_angular: int,
    chunk: int = 256,
):
    """Plain midpoint tensor rule including the Jacobian rho.

    Intentionally simple and slow; the independent oracle used by tests.
    Radial rows are processed in chunks to bound memory at large node
    counts.
    """
    if n_radial < 1 or n_angular < 1:
        raise InvalidRegionError("node counts must be positive")
    dr = (region.r_hi - region.r_lo) / n_radial
    dp = (region.theta_hi - region.theta_lo) / n_angular
    phi = region.theta_lo + (np.arange(n_angular) + 0.5) * dp
    total = 0.0
    for start in range(0, n_radial, chunk):
        stop = min(start + chunk, n_radial)
        rho = region.r_lo + (np.arange(start, stop) + 0.5) * dr
        values = np.asarray(integrand(rho[:, None], phi[None, :]), dtype=float)
        values = np.broadcast_to(values, (rho.size, n_angular))
        if not np.all(np.isfinite(values)):
            raise NonFiniteError("integrand returned NaN/inf at a midpoint node")
        total += float(np.sum(values * rho[:, None]))
    return total * dr * dp
