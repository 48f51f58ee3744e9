import math

import numpy as np
import pytest

from harmonicdisk.errors import (
    InvalidExponentError,
    InvalidRegionError,
    NonFiniteError,
)
from harmonicdisk.geometry import PolarRectangle
from harmonicdisk.kernels import q_kernel
from harmonicdisk.quadrature import (
    QuadratureSpec,
    integrate_angular,
    integrate_polar,
    integrate_singular_radial,
    midpoint_oracle,
)

PI = math.pi
DISK = PolarRectangle.full_disk()


def ones(rho, phi):
    return np.ones(np.broadcast_shapes(np.shape(rho), np.shape(phi)))


class TestIntegratePolar:
    def test_disk_area(self):
        res = integrate_polar(ones, DISK)
        assert res.value == pytest.approx(PI, abs=1e-12)
        assert res.converged

    def test_small_disk_area(self):
        res = integrate_polar(ones, PolarRectangle(0.0, 0.25, 0.0, 2.0 * PI))
        assert res.value == pytest.approx(PI / 16.0, abs=1e-12)

    def test_q_normalization_identity(self):
        res = integrate_polar(lambda rho, phi: q_kernel(0.5 * rho, 0.3 - phi) / PI, DISK)
        assert res.value == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("m", [0, 1, 5, 10])
    @pytest.mark.parametrize("k", [0, 3, 10])
    def test_exactness_polynomial_times_cosine(self, m, k):
        rect = PolarRectangle(0.15, 0.85, -1.1, 0.6)
        exact_r = (rect.r_hi ** (m + 2) - rect.r_lo ** (m + 2)) / (m + 2)
        if k == 0:
            exact_t = rect.theta_hi - rect.theta_lo
        else:
            exact_t = (math.sin(k * rect.theta_hi) - math.sin(k * rect.theta_lo)) / k
        res = integrate_polar(lambda rho, phi: rho**m * np.cos(k * phi), rect)
        assert res.value == pytest.approx(exact_r * exact_t, abs=1e-12)

    def test_additivity(self):
        f = lambda rho, phi: np.exp(rho) * np.sin(3.0 * phi + 0.2)
        rect = PolarRectangle(0.1, 0.9, -2.0, 1.5)
        whole = integrate_polar(f, rect).value
        left = integrate_polar(f, PolarRectangle(0.1, 0.9, -2.0, -0.3)).value
        right = integrate_polar(f, PolarRectangle(0.1, 0.9, -0.3, 1.5)).value
        assert whole == pytest.approx(left + right, abs=1e-12)
        lo = integrate_polar(f, PolarRectangle(0.1, 0.4, -2.0, 1.5)).value
        hi = integrate_polar(f, PolarRectangle(0.4, 0.9, -2.0, 1.5)).value
        assert whole == pytest.approx(lo + hi, abs=1e-12)

    def test_deterministic(self):
        f = lambda rho, phi: q_kernel(0.88 * rho, 0.4 - phi)
        first = integrate_polar(f, DISK)
        second = integrate_polar(f, DISK)
        assert first.value == second.value
        assert first.panels_used == second.panels_used

    def test_non_finite_raises(self):
        def bad(rho, phi):
            return np.where(rho > 0.5, np.nan, 1.0)

        with pytest.raises(NonFiniteError):
            integrate_polar(bad, DISK)

    def test_unconverged_flagged(self):
        spec = QuadratureSpec(nodes_radial=2, nodes_angular=2, adaptive_tol=1e-14, max_depth=1)
        res = integrate_polar(lambda rho, phi: q_kernel(0.9 * rho, phi), DISK, spec)
        assert not res.converged
        assert res.error_estimate > spec.adaptive_tol

    def test_converged_error_bound(self):
        spec = QuadratureSpec()
        res = integrate_polar(lambda rho, phi: q_kernel(0.85 * rho, phi), DISK, spec)
        assert res.converged
        assert res.error_estimate <= spec.adaptive_tol * res.panels_used

    def test_singularity_exponent_routes_to_substitution(self):
        spec = QuadratureSpec(singularity_exponent=0.25)
        region = PolarRectangle(0.75, 1.0, 0.0, 1.0)
        expected = (4.0 / 3.0) * 0.25**0.75 - (4.0 / 7.0) * 0.25**1.75
        res = integrate_polar(ones, region, spec)
        assert res.value == pytest.approx(expected, abs=1e-9)


class TestSingularRadial:
    def test_one_dimensional_self_test(self):
        # int_0^1 (1 - rho)^(-1/2) drho = 2, Jacobian suppressed
        res = integrate_singular_radial(
            ones, 0.5, PolarRectangle(0.0, 1.0, 0.0, 1.0), include_jacobian=False
        )
        assert res.value == pytest.approx(2.0, abs=1e-10)

    def test_with_jacobian_closed_form(self):
        # int_{3/4}^1 rho (1-rho)^(-1/4) drho via u = 1-rho
        expected = (4.0 / 3.0) * 0.25**0.75 - (4.0 / 7.0) * 0.25**1.75
        res = integrate_singular_radial(ones, 0.25, PolarRectangle(0.75, 1.0, 0.0, 1.0))
        assert res.value == pytest.approx(expected, abs=1e-9)

    def test_beta_to_zero_matches_regular(self):
        region = PolarRectangle(0.5, 1.0, -0.4, 0.9)
        f = lambda rho, phi: np.cos(phi) * np.broadcast_to(rho, np.broadcast_shapes(np.shape(rho), np.shape(phi))) ** 2
        sub = integrate_singular_radial(f, 1e-6, region).value
        plain = integrate_polar(f, region).value
        assert sub == pytest.approx(plain, abs=1e-6)

    def test_angular_weight_at_disk_center(self):
        # with the kernel identically 1 the transform reduces to the plain
        # weighted integral; radial closed form times the cosine arc integral
        region = PolarRectangle(0.75, 1.0, -PI / 6, PI / 6)
        radial = (4.0 / 3.0) * 0.25**0.75 - (4.0 / 7.0) * 0.25**1.75
        expected = radial * (2.0 * math.sin(PI / 6.0))
        res = integrate_singular_radial(
            lambda rho, phi: np.broadcast_to(np.cos(phi), np.broadcast_shapes(np.shape(rho), np.shape(phi))),
            0.25,
            region,
        )
        assert res.value == pytest.approx(expected, abs=1e-9)
        # brute-force midpoint in the substituted variable (independent rule)
        beta = 0.25
        n_t, n_p = 4000, 250
        t_hi = 0.25 ** (1 - beta)
        dt = t_hi / n_t
        dp = (PI / 3.0) / n_p
        t = (np.arange(n_t) + 0.5) * dt
        p = -PI / 6.0 + (np.arange(n_p) + 0.5) * dp
        rho = 1.0 - t ** (1.0 / (1.0 - beta))
        brute = np.sum(
            np.cos(p)[None, :] * (rho / (1.0 - beta))[:, None]
        ) * dt * dp
        assert res.value == pytest.approx(brute, rel=1e-4)

    def test_invalid_exponent(self):
        region = PolarRectangle(0.5, 1.0, 0.0, 1.0)
        with pytest.raises(InvalidExponentError):
            integrate_singular_radial(ones, 1.2, region)
        with pytest.raises(InvalidExponentError):
            integrate_singular_radial(ones, 0.0, region)

    def test_region_must_touch_boundary(self):
        with pytest.raises(InvalidRegionError):
            integrate_singular_radial(ones, 0.25, PolarRectangle(0.5, 0.9, 0.0, 1.0))


class TestMidpointOracle:
    def test_disk_area(self):
        assert midpoint_oracle(ones, DISK, 1000, 1000) == pytest.approx(PI, abs=1e-5)

    def test_odd_symmetry(self):
        val = midpoint_oracle(lambda rho, phi: rho * np.cos(phi), DISK, 500, 500)
        assert val == pytest.approx(0.0, abs=1e-9)

    def test_q_normalization(self):
        val = midpoint_oracle(
            lambda rho, phi: q_kernel(0.7 * rho, 1.2 - phi), DISK, 2000, 4000
        )
        assert val / PI == pytest.approx(1.0, abs=1e-4)

    def test_agreement_with_adaptive_on_catalog_integrands(self):
        # regular sources only: the plain midpoint rule is useless against
        # the (1-rho)^(-beta) factors, which get the 1e-4 relative check
        # through the substituted rule instead (see TestSingularRadial)
        from harmonicdisk.sources import figure_case

        for fig_id, r, theta in ((4, 0.6, 0.5), (9, 0.85, -0.2), (15, 0.7, 0.1)):
            case = figure_case(fig_id).payload
            q_case = case.q if hasattr(case, "q") else case
            total_adaptive, total_err = 0.0, 0.0
            total_brute = 0.0
            for piece in q_case.source.pieces():
                integrand = lambda rho, phi, fn=piece.fn: fn(rho, phi) * q_kernel(
                    r * rho, theta - phi
                )
                res = integrate_polar(integrand, piece.rect)
                total_adaptive += piece.coef * res.value
                total_err += abs(piece.coef) * res.error_estimate
                total_brute += piece.coef * midpoint_oracle(integrand, piece.rect, 2000, 4000)
            assert abs(total_adaptive - total_brute) <= max(1e-6, 10.0 * total_err)


class TestIntegrateAngular:
    def test_full_circle_cosine(self):
        res = integrate_angular(lambda t: np.cos(t) ** 2, -PI, PI)
        assert res.value == pytest.approx(PI, abs=1e-12)

    def test_invalid_interval(self):
        with pytest.raises(InvalidRegionError):
            integrate_angular(lambda t: t, 1.0, 1.0)


class TestSpecValidation:
    def test_bad_specs(self):
        with pytest.raises(InvalidRegionError):
            QuadratureSpec(nodes_radial=0)
        with pytest.raises(InvalidRegionError):
            QuadratureSpec(adaptive_tol=0.0)
        with pytest.raises(InvalidRegionError):
            QuadratureSpec(max_depth=31)
        with pytest.raises(InvalidExponentError):
            QuadratureSpec(singularity_exponent=1.0)

    def test_bad_region(self):
        with pytest.raises(InvalidRegionError):
            PolarRectangle(0.5, 0.25, 0.0, 1.0)
        with pytest.raises(InvalidRegionError):
            PolarRectangle(0.0, 1.0, 0.0, 7.0)
