import json
import math

import numpy as np
import pytest

from harmonicdisk.cli import main, parse_prefactor
from harmonicdisk.errors import DomainError
from harmonicdisk.geometry import EvaluationGrid
from harmonicdisk.gridio import ratio_field, read_grid_file, sidecar_path, write_grid_file
from harmonicdisk.transforms import Field

PI = math.pi


def make_field(values=None, n_r=3, n_theta=4):
    grid = EvaluationGrid.regular(n_r=n_r, n_theta=n_theta, r_max=0.8)
    if values is None:
        rng = np.random.default_rng(7)
        values = rng.standard_normal(grid.shape) * np.pi
    return Field(
        grid=grid,
        values=values,
        converged=np.ones(grid.shape, dtype=bool),
        errors=np.zeros(grid.shape),
        meta={"operator": "test"},
    )


class TestGridIO:
    def test_roundtrip_exact(self, tmp_path):
        fld = make_field()
        path = write_grid_file(fld, tmp_path / "f.csv", reload_check=True)
        back = read_grid_file(path)
        assert np.array_equal(back.values, fld.values)
        assert np.array_equal(back.grid.radii, fld.grid.radii)
        assert np.array_equal(back.grid.angles, fld.grid.angles)
        assert back.meta["operator"] == "test"

    def test_seventeen_digits_roundtrip_awkward_values(self, tmp_path):
        values = np.array([[1.0 / 3.0, math.pi, 1e-300, -1.2345678901234567e17]])
        grid = EvaluationGrid(np.array([0.5]), np.array([-3.0, -1.0, 0.0, 1.0]))
        fld = Field(grid=grid, values=values,
                    converged=np.ones_like(values, bool), errors=np.zeros_like(values))
        write_grid_file(fld, tmp_path / "a.csv", reload_check=True)

    def test_deterministic_bytes(self, tmp_path):
        fld = make_field()
        p1 = write_grid_file(fld, tmp_path / "a.csv")
        p2 = write_grid_file(fld, tmp_path / "b.csv")
        assert p1.read_bytes() == p2.read_bytes()

    def test_no_timestamp_by_default(self, tmp_path):
        fld = make_field()
        path = write_grid_file(fld, tmp_path / "a.csv")
        meta = json.loads(sidecar_path(path).read_text())
        assert "timestamp" not in meta
        path = write_grid_file(fld, tmp_path / "b.csv", timestamp=True)
        meta = json.loads(sidecar_path(path).read_text())
        assert "timestamp" in meta

    def test_row_count(self, tmp_path):
        fld = make_field(n_r=5, n_theta=7)
        path = write_grid_file(fld, tmp_path / "a.csv")
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 1 + 5 * 7

    def test_ratio_field_guards_small_denominators(self):
        num = make_field(values=np.ones((3, 4)))
        den = make_field(values=np.ones((3, 4)))
        den.values[1, 2] = 1e-12
        ratio = ratio_field(num, den)
        assert not ratio.converged[1, 2]
        assert np.isnan(ratio.values[1, 2])
        assert ratio.values[0, 0] == 1.0

    def test_ratio_requires_matching_grids(self):
        a = make_field()
        b = make_field(n_r=4)
        with pytest.raises(DomainError):
            ratio_field(a, b)

    def test_nan_roundtrip(self, tmp_path):
        fld = make_field(values=np.full((3, 4), np.nan))
        write_grid_file(fld, tmp_path / "n.csv", reload_check=True)


class TestPrefactorParsing:
    def test_forms(self):
        assert parse_prefactor("1") == 1.0
        assert parse_prefactor("2/pi") == pytest.approx(2.0 / PI)
        assert parse_prefactor("pi/4") == pytest.approx(PI / 4.0)
        assert parse_prefactor("pi") == pytest.approx(PI)
        assert parse_prefactor("0.5*pi") == pytest.approx(PI / 2.0)
        assert parse_prefactor("-1.5") == -1.5

    def test_bad_forms(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_prefactor("two")


class TestCLI:
    def test_kernel_profile_constant_at_zero(self, tmp_path):
        out = tmp_path / "k.csv"
        code = main(["kernel", "--kernel", "poisson", "--radii", "0",
                     "--n-theta", "16", "--out", str(out), "--reload"])
        assert code == 0
        fld = read_grid_file(out)
        assert np.array_equal(fld.values, np.ones((1, 16)))

    def test_kernel_figure_radii(self, tmp_path):
        out = tmp_path / "k.csv"
        code = main(["kernel", "--kernel", "q", "--radii", "0.5,0.75",
                     "--n-theta", "32", "--out", str(out)])
        assert code == 0
        fld = read_grid_file(out)
        assert fld.grid.n_r == 2
        # profile peaks at theta = 0 with value 1/(1-s)^2
        i0 = np.argmin(np.abs(fld.grid.angles))
        assert fld.values[0, i0] == pytest.approx(4.0, abs=1e-12)

    def test_bergman_kernel_profile(self, tmp_path):
        out = tmp_path / "b.csv"
        code = main(["kernel", "--kernel", "bergman", "--alpha", "1.0",
                     "--radii", "0.5", "--n-theta", "16", "--out", str(out)])
        assert code == 0

    def test_figure_4_plateau(self, tmp_path):
        code = main(["figure", "4", "--n-r", "4", "--n-theta", "8",
                     "--r-max", "0.8", "--out", str(tmp_path)])
        assert code == 0
        fld = read_grid_file(tmp_path / "fig04_q.csv")
        assert np.max(np.abs(fld.values - PI / 16.0)) < 1e-3
        meta = json.loads(sidecar_path(tmp_path / "fig04_q.csv").read_text())
        assert meta["figure"] == 4
        assert meta["prefactor"] == 1.0

    def test_figure_8_origin_value(self, tmp_path):
        code = main(["figure", "8", "--n-r", "3", "--n-theta", "8",
                     "--r-max", "0.6", "--out", str(tmp_path)])
        assert code == 0
        fld = read_grid_file(tmp_path / "fig08_poisson.csv")
        # harmonic measure of a pi/3 arc averages to 1/6 at the center
        assert np.allclose(fld.values[0], 1.0 / 6.0, atol=1e-6)

    def test_figure_9_emits_pair_and_ratio(self, tmp_path):
        code = main(["figure", "9", "--n-r", "3", "--n-theta", "8",
                     "--r-max", "0.7", "--out", str(tmp_path)])
        assert code == 0
        for name in ("fig09_q.csv", "fig09_poisson.csv", "fig09_ratio.csv"):
            assert (tmp_path / name).exists()

    def test_figure_12_paired_outputs(self, tmp_path):
        code = main(["figure", "12", "--n-r", "3", "--n-theta", "8",
                     "--r-max", "0.7", "--out", str(tmp_path)])
        assert code == 0
        q = read_grid_file(tmp_path / "fig12_q.csv")
        p = read_grid_file(tmp_path / "fig12_poisson.csv")
        ratio = read_grid_file(tmp_path / "fig12_ratio.csv")
        ok = ratio.converged
        assert np.array_equal(
            ratio.values[ok], (q.values / p.values)[ok]
        )

    def test_transform_matches_figure_bitwise(self, tmp_path):
        src = tmp_path / "src.json"
        src.write_text(json.dumps({
            "type": "char_rect",
            "r": [0.9, 1.0],
            "theta": [-PI / 6, PI / 6],
        }))
        code = main(["figure", "9", "--n-r", "3", "--n-theta", "8",
                     "--r-max", "0.7", "--out", str(tmp_path)])
        assert code == 0
        code = main(["transform", "--source-file", str(src), "--prefactor", "2/pi",
                     "--n-r", "3", "--n-theta", "8", "--r-max", "0.7",
                     "--out", str(tmp_path / "t.csv")])
        assert code == 0
        fig = (tmp_path / "fig09_q.csv").read_bytes()
        t = (tmp_path / "t.csv").read_bytes()
        assert fig == t

    def test_poisson_command(self, tmp_path):
        src = tmp_path / "b.json"
        src.write_text(json.dumps({"type": "one"}))
        out = tmp_path / "p.csv"
        code = main(["poisson", "--source-file", str(src), "--n-r", "3",
                     "--n-theta", "8", "--r-max", "0.7", "--out", str(out)])
        assert code == 0
        fld = read_grid_file(out)
        assert np.max(np.abs(fld.values - 1.0)) < 1e-10

    def test_project_command(self, tmp_path):
        src = tmp_path / "s.json"
        src.write_text(json.dumps({"type": "char_disk", "radius": 0.25}))
        out = tmp_path / "p.csv"
        code = main(["project", "--source-file", str(src), "--n-r", "3",
                     "--n-theta", "8", "--r-max", "0.7", "--out", str(out)])
        assert code == 0
        fld = read_grid_file(out)
        assert np.max(np.abs(fld.values - 1.0 / 16.0)) < 1e-6

    def test_norms_command(self, tmp_path, capsys):
        src = tmp_path / "b.json"
        src.write_text(json.dumps({"type": "char_arc", "arc": [-PI / 6, PI / 6]}))
        code = main(["norms", "--source-file", str(src), "--kind", "circle_l2"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["value"] == pytest.approx(math.sqrt(PI / 3.0), abs=1e-10)

    def test_usage_errors_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["transform", "--source-file", str(bad),
                     "--out", str(tmp_path / "x.csv")]) == 2
        assert main(["figure", "99", "--out", str(tmp_path)]) == 2
        # boundary function fed to a disk-source command
        barc = tmp_path / "arc.json"
        barc.write_text(json.dumps({"type": "abs_theta"}))
        assert main(["transform", "--source-file", str(barc),
                     "--out", str(tmp_path / "x.csv")]) == 2
        assert main(["conjecture", "--out", str(tmp_path)]) == 2
        # grid above the evaluation cap
        ok = tmp_path / "ok.json"
        ok.write_text(json.dumps({"type": "char_disk", "radius": 0.25}))
        assert main(["transform", "--source-file", str(ok), "--r-max", "0.995",
                     "--out", str(tmp_path / "x.csv")]) == 2

    def test_numerical_failure_exits_3(self, tmp_path):
        # robin conditions sample the source on the rim, where the
        # figure-6 source diverges
        code = main(["conjecture", "--figure", "6", "--boundary", "robin",
                     "--n-r", "16", "--n-theta", "16", "--out", str(tmp_path)])
        assert code == 3

    def test_conjecture_command(self, tmp_path):
        code = main(["conjecture", "--figure", "4", "--n-r", "32",
                     "--n-theta", "64", "--out", str(tmp_path)])
        assert code == 0
        report = json.loads((tmp_path / "conjecture_report.json").read_text())
        assert report["boundary_condition"] == "dirichlet_zero"
        assert (tmp_path / "steady_state.csv").exists()
        assert (tmp_path / "transform.csv").exists()

    def test_verify_command_negative_control_wiring(self, tmp_path, capsys):
        # full default verify is exercised in the acceptance suite; here
        # just check report writing and the exit-code contract shape
        out = tmp_path / "report.json"
        code = main(["verify", "--skip-heat", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["all_passed"] is True
