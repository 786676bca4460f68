import csv

import pytest
from click.testing import CliRunner

from helpers.ppm import read_ppm
from main import cli
from percor import analysis


@pytest.fixture
def runner():
    return CliRunner()


def _render(runner, scene, out, *extra):
    result = runner.invoke(cli, ["render", str(scene), "--out", str(out), *extra])
    assert result.exit_code == 0, result.output
    return out.read_bytes()


class TestRender:
    def test_parallel_plane_needs_no_correction(self, runner, scenes_dir, tmp_path):
        exact = _render(runner, scenes_dir / "parallel.scene", tmp_path / "exact.ppm")
        affine = _render(runner, scenes_dir / "parallel.scene", tmp_path / "affine.ppm", "--method", "affine")
        assert exact.startswith(b"P6")
        assert exact == affine

    def test_tilted_plane_swims_without_correction(self, runner, scenes_dir, tmp_path):
        exact = _render(runner, scenes_dir / "tilted.scene", tmp_path / "exact.ppm")
        affine = _render(runner, scenes_dir / "tilted.scene", tmp_path / "affine.ppm", "--method", "affine")
        assert exact != affine

    def test_deterministic(self, runner, scenes_dir, tmp_path):
        first = _render(runner, scenes_dir / "shaded.scene", tmp_path / "a.ppm", "--shading", "normals")
        second = _render(runner, scenes_dir / "shaded.scene", tmp_path / "b.ppm", "--shading", "normals")
        assert first == second

    def test_later_shape_paints_over_a_nearer_one(self, runner, tmp_path):
        scene = tmp_path / "overlap.scene"
        scene.write_text(
            "width = 64\nheight = 64\nshading = gouraud\n"
            "[triangle]\nvertices = -2 -2 2; 2 -2 2; 0 2 2\nuvs = 0 0; 1 0; 0.5 1\ncolors = 1 0 0; 1 0 0; 1 0 0\n"
            "[triangle]\nvertices = -2 -2 4; 2 -2 4; 0 2 4\nuvs = 0 0; 1 0; 0.5 1\ncolors = 0 0 1; 0 0 1; 0 0 1\n"
        )
        _render(runner, scene, tmp_path / "x.ppm")
        red, green, blue = read_ppm(tmp_path / "x.ppm").pixels[32, 32]
        assert red == green == 0
        assert blue > 0

    def test_unknown_method_is_a_usage_error(self, runner, scenes_dir, tmp_path):
        result = runner.invoke(cli, ["render", str(scenes_dir / "tilted.scene"), "-m", "perfect", "-o", str(tmp_path / "x.ppm")])
        assert result.exit_code == 1
        assert "exact" in result.output
        assert not (tmp_path / "x.ppm").exists()

    def test_missing_out_is_a_usage_error(self, runner, scenes_dir):
        result = runner.invoke(cli, ["render", str(scenes_dir / "tilted.scene")])
        assert result.exit_code == 1

    def test_missing_texture_is_an_io_error(self, runner, tmp_path):
        scene = tmp_path / "a.scene"
        scene.write_text("texture = nowhere.ppm\n")
        result = runner.invoke(cli, ["render", str(scene), "-o", str(tmp_path / "x.ppm")])
        assert result.exit_code == 2
        assert "nowhere.ppm" in result.output

    def test_parse_error_is_an_io_error(self, runner, tmp_path):
        scene = tmp_path / "a.scene"
        scene.write_text("width = 8\nwibble = 1\n")
        result = runner.invoke(cli, ["render", str(scene), "-o", str(tmp_path / "x.ppm")])
        assert result.exit_code == 2
        assert "wibble" in result.output


class TestBench:
    def test_exact_against_itself(self, runner, scenes_dir, tmp_path):
        out = tmp_path / "bench.csv"
        result = runner.invoke(cli, ["bench", str(scenes_dir / "tilted.scene"), "--methods", "exact", "--csv", str(out)])
        assert result.exit_code == 0, result.output
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert tuple(rows[0]) == analysis.CSV_HEADER
        assert len(rows) == 4
        assert all(row[0] == "exact" and row[1] == "quad0" and row[4] == "0" for row in rows[1:])

    def test_diff_images(self, runner, scenes_dir, tmp_path):
        result = runner.invoke(
            cli,
            ["bench", str(scenes_dir / "tilted.scene"), "--methods", "exact,affine", "--diff-images", str(tmp_path / "d")],
        )
        assert result.exit_code == 0, result.output
        assert (tmp_path / "d" / "exact-diff.ppm").is_file()
        assert (tmp_path / "d" / "affine-diff.ppm").is_file()

    def test_unknown_method(self, runner, scenes_dir):
        result = runner.invoke(cli, ["bench", str(scenes_dir / "tilted.scene"), "--methods", "exact,nope"])
        assert result.exit_code == 1


class TestClaims:
    def test_passing_subset(self, runner, monkeypatch, tmp_path):
        monkeypatch.setattr(analysis, "CLAIM_GROUPS", (analysis._piecewise_tw, analysis._serpentine))
        out = tmp_path / "claims.csv"
        result = runner.invoke(cli, ["claims", "--csv", str(out), "--seed", "1"])
        assert result.exit_code == 0, result.output
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert tuple(rows[0]) == analysis.CSV_HEADER
        assert any(row[2].endswith("(info)") for row in rows[1:])

    def test_injected_fault_fails(self, runner, monkeypatch):
        monkeypatch.setattr(analysis, "CLAIM_GROUPS", (analysis._piecewise_tw,))
        result = runner.invoke(cli, ["claims", "--inject-fault", "piecewise"])
        assert result.exit_code == 3


class TestOtherCommands:
    def test_methods(self, runner):
        result = runner.invoke(cli, ["methods"])
        assert result.exit_code == 0
        assert "bezier" in result.output

    def test_settings(self, runner):
        result = runner.invoke(cli, ["settings"])
        assert result.exit_code == 0
        assert "PERCOR_SEED" in result.output

    def test_help(self, runner):
        result = runner.invoke(cli, ["help"])
        assert result.exit_code == 0
        assert "render" in result.output
        assert "claims" in result.output

    def test_help_for_a_command(self, runner):
        result = runner.invoke(cli, ["help", "bench"])
        assert result.exit_code == 0
        assert "--diff-images" in result.output
