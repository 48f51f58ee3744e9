import json
import math

import numpy as np
import pytest

from harmonicdisk.errors import (
    NonFiniteError,
    SourceParseError,
    SourceValidationError,
    UnknownFigureError,
)
from harmonicdisk.geometry import PolarPoint, PolarRectangle
from harmonicdisk.quadrature import integrate_polar, integrate_singular_radial
from harmonicdisk.sources import (
    AbsLogAbsOnArc,
    AbsPhi,
    AngularCos,
    CharacteristicArc,
    CharacteristicDisk,
    CharacteristicRect,
    Cosine,
    GaussianBump,
    PairedCase,
    PoissonCase,
    PowerOfOneMinusRho,
    QCase,
    KernelPlot,
    RhoPower,
    SeparableOnRect,
    SourceSum,
    catalog_q_sources,
    evaluate_source,
    figure_case,
    parse_source_config,
    serialize_config,
)

PI = math.pi


class TestEvaluateSource:
    def test_characteristic_disk(self):
        disk = CharacteristicDisk(0.25)
        assert evaluate_source(disk, PolarPoint(0.1, 2.0)) == 1.0
        assert evaluate_source(disk, PolarPoint(0.3, 2.0)) == 0.0

    def test_gaussian_bump_peak(self):
        src = figure_case(15).payload.source
        assert evaluate_source(src, PolarPoint(0.5, 0.0)) == pytest.approx(10.0, abs=1e-12)

    def test_singular_point_raises(self):
        src = figure_case(6).payload.source
        with pytest.raises(NonFiniteError):
            evaluate_source(src, PolarPoint(1.0, 0.0))

    def test_characteristic_rect_membership(self):
        rect = CharacteristicRect(PolarRectangle(0.25, 0.5, 0.0, PI / 4))
        assert evaluate_source(rect, PolarPoint(0.3, 0.3)) == 1.0
        assert evaluate_source(rect, PolarPoint(0.3, -0.1)) == 0.0
        assert evaluate_source(rect, PolarPoint(0.6, 0.3)) == 0.0


class TestValidation:
    def test_beta_limit(self):
        PowerOfOneMinusRho(0.49)
        with pytest.raises(SourceValidationError):
            PowerOfOneMinusRho(0.5)
        with pytest.raises(SourceValidationError):
            PowerOfOneMinusRho(-0.1)

    def test_bad_arcs(self):
        with pytest.raises(SourceValidationError):
            CharacteristicArc(0.5, 0.2)
        with pytest.raises(SourceValidationError):
            CharacteristicArc(-4.0, 0.0)

    def test_empty_sum(self):
        with pytest.raises(SourceValidationError):
            SourceSum(())

    def test_gaussian_width(self):
        with pytest.raises(SourceValidationError):
            GaussianBump(1.0, 0.5, 0.0)


class TestFigureCatalog:
    def test_ids_complete(self):
        for fig_id in range(1, 16):
            case = figure_case(fig_id)
            assert case.id == fig_id
            assert case.description

    def test_unknown_ids(self):
        for bad in (0, 16, -3):
            with pytest.raises(UnknownFigureError):
                figure_case(bad)

    def test_figure_4_payload(self):
        payload = figure_case(4).payload
        assert isinstance(payload, QCase)
        assert payload.source == CharacteristicDisk(0.25)
        assert payload.prefactor == 1.0

    def test_figure_9_payload(self):
        payload = figure_case(9).payload
        assert isinstance(payload, QCase)
        assert payload.source == CharacteristicRect(PolarRectangle(0.9, 1.0, -PI / 6, PI / 6))
        assert payload.prefactor == pytest.approx(2.0 / PI)

    def test_figure_8_payload(self):
        payload = figure_case(8).payload
        assert isinstance(payload, PoissonCase)
        assert payload.boundary == CharacteristicArc(-PI / 6, PI / 6)

    def test_kernel_figures(self):
        assert isinstance(figure_case(1).payload, KernelPlot)
        assert figure_case(1).payload.radii == (0.5, 0.75, 0.85)
        assert figure_case(2).payload.radii == (0.5, 0.75)

    def test_paired_figures(self):
        for fig_id in (3, 12, 13, 14):
            assert isinstance(figure_case(fig_id).payload, PairedCase)

    def test_figure_6_is_singular(self):
        pieces = figure_case(6).payload.source.pieces()
        assert len(pieces) == 1
        assert pieces[0].beta == 0.25

    def test_figure_7_combines_two_layers(self):
        pieces = figure_case(7).payload.source.pieces()
        assert [p.beta for p in pieces] == [0.25, 0.375]

    def test_boundary_layer_figures_carry_extra_rho(self):
        # the 11..14 integrands include the displayed rho beyond the Jacobian
        for fig_id in (11, 12, 13, 14):
            case = figure_case(fig_id).payload
            q_case = case.q if isinstance(case, PairedCase) else case
            assert isinstance(q_case.source.radial, RhoPower)
            assert q_case.source.radial.k == 1


class TestConfigParsing:
    def test_char_rect_example(self):
        doc = {"type": "char_rect", "r": [0.25, 0.5], "theta": [0, 0.7853981633974483]}
        src = parse_source_config(json.dumps(doc))
        assert src == CharacteristicRect(PolarRectangle(0.25, 0.5, 0.0, 0.7853981633974483))

    def test_separable_example_matches_catalog(self):
        doc = {
            "type": "separable",
            "radial": {"pow_one_minus_rho": 0.25},
            "angular": {"cos": 1},
            "rect": {"r": [0.75, 1.0], "theta": [-PI / 6, PI / 6]},
        }
        assert parse_source_config(doc) == figure_case(6).payload.source

    def test_inverted_bounds_rejected(self):
        doc = {"type": "char_rect", "r": [0.5, 0.25], "theta": [0.0, 1.0]}
        with pytest.raises(SourceValidationError):
            parse_source_config(doc)

    def test_beta_too_large_rejected(self):
        doc = {
            "type": "separable",
            "radial": {"pow_one_minus_rho": 0.6},
            "angular": "one",
            "rect": {"r": [0.5, 1.0], "theta": [0.0, 1.0]},
        }
        with pytest.raises(SourceValidationError):
            parse_source_config(doc)

    def test_unknown_type(self):
        with pytest.raises(SourceParseError):
            parse_source_config({"type": "mystery"})

    def test_unknown_field(self):
        with pytest.raises(SourceParseError):
            parse_source_config({"type": "char_disk", "radius": 0.2, "extra": 1})

    def test_invalid_json_reports_line(self):
        with pytest.raises(SourceParseError, match="line"):
            parse_source_config("{broken")

    def test_mixed_sum_rejected(self):
        doc = {
            "type": "weighted_sum",
            "terms": [
                {"coef": 1.0, "term": {"type": "char_disk", "radius": 0.2}},
                {"coef": 1.0, "term": {"type": "abs_theta"}},
            ],
        }
        with pytest.raises(SourceValidationError):
            parse_source_config(doc)

    def test_boundary_types(self):
        assert parse_source_config({"type": "cos", "n": 2}) == Cosine(2)
        assert parse_source_config(
            {"type": "abs_log_abs_on_arc", "arc": [0.0, PI]}
        ) == AbsLogAbsOnArc(0.0, PI)

    def test_round_trip_whole_catalog(self):
        for fig_id in range(1, 16):
            payload = figure_case(fig_id).payload
            objs = []
            if isinstance(payload, QCase):
                objs = [payload.source]
            elif isinstance(payload, PoissonCase):
                objs = [payload.boundary]
            elif isinstance(payload, PairedCase):
                objs = [payload.poisson.boundary, payload.q.source]
            for obj in objs:
                assert parse_source_config(serialize_config(obj)) == obj


class TestSquareIntegrability:
    @pytest.mark.parametrize("fig_id", sorted(catalog_q_sources()))
    def test_catalog_square_norms_finite(self, fig_id):
        source = catalog_q_sources()[fig_id].source
        total = 0.0
        for piece in source.pieces():
            if piece.beta is not None:
                # |f|^2 carries (1 - rho)^(-2 beta); 2 beta < 1 keeps it integrable
                res = integrate_singular_radial(
                    lambda rho, phi, fn=piece.fn: fn(rho, phi) ** 2,
                    2.0 * piece.beta,
                    piece.rect,
                )
            else:
                res = integrate_polar(
                    lambda rho, phi, fn=piece.fn: fn(rho, phi) ** 2, piece.rect
                )
            total += piece.coef**2 * res.value
        assert math.isfinite(total)
        assert total > 0.0

    def test_singular_square_matches_substituted_midpoint(self):
        # independent midpoint rule on the substituted integrand
        piece = figure_case(6).payload.source.pieces()[0]
        beta_sq = 2.0 * piece.beta
        res = integrate_singular_radial(
            lambda rho, phi, fn=piece.fn: fn(rho, phi) ** 2, beta_sq, piece.rect
        )
        n_t, n_p = 4000, 200
        one_minus = 1.0 - beta_sq
        t_hi = (1.0 - piece.rect.r_lo) ** one_minus
        dt = t_hi / n_t
        dp = (piece.rect.theta_hi - piece.rect.theta_lo) / n_p
        t = (np.arange(n_t) + 0.5) * dt
        p = piece.rect.theta_lo + (np.arange(n_p) + 0.5) * dp
        rho = 1.0 - t ** (1.0 / one_minus)
        brute = np.sum(
            np.cos(p)[None, :] ** 2 * (rho / one_minus)[:, None]
        ) * dt * dp
        assert res.value == pytest.approx(brute, rel=1e-4)


class TestVectorizedValues:
    def test_weighted_sum_linearity(self):
        a = CharacteristicDisk(0.5)
        b = CharacteristicRect(PolarRectangle(0.2, 0.8, -1.0, 1.0))
        combo = SourceSum(((2.0, a), (-0.5, b)))
        rho = np.linspace(0.05, 0.95, 7)[:, None]
        phi = np.linspace(-PI, PI, 9)[None, :]
        expected = 2.0 * a.values(rho, phi) - 0.5 * b.values(rho, phi)
        assert np.array_equal(combo.values(rho, phi), expected)

    def test_separable_values(self):
        src = SeparableOnRect(
            RhoPower(2), AngularCos(1), PolarRectangle(0.0, 1.0, -PI, PI)
        )
        assert evaluate_source(src, PolarPoint(0.5, 0.0)) == pytest.approx(0.25)
        assert evaluate_source(src, PolarPoint(0.5, PI / 2)) == pytest.approx(0.0, abs=1e-16)

    def test_abs_phi_factor(self):
        f = AbsPhi()
        assert np.array_equal(f(np.array([-1.0, 2.0])), np.array([1.0, 2.0]))
