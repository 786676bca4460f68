import numpy as np
import pytest

from percor.analysis import reference_scene
from percor.errors import UnknownMethod
from percor.methods import METHODS, MethodParams, get_method
from percor.ops import counting
from percor.primitives import ScreenTriangle
from percor.raster.scanline import covered_pixels
from percor.texmap.projective import MapClass, ProjectiveTexMap, classify_map, exact_uv_array
from tests.conftest import needs_counting

SCENE = reference_scene()
PARAMS = MethodParams()


def _run(name: str):
    return [get_method(name).run(SCENE.m, tri, PARAMS) for tri in SCENE.triangles]


class TestRegistry:
    def test_names(self):
        assert list(METHODS) == [
            "exact",
            "affine",
            "midpoint",
            "quad",
            "quad-anchored",
            "quad-unnorm",
            "cubic",
            "bezier",
            "bezier-quad",
            "bivariate2",
            "bivariate3",
            "nrl",
            "adaptive",
        ]

    def test_unknown_method_lists_the_valid_ones(self):
        with pytest.raises(UnknownMethod, match="exact"):
            get_method("perfect")


class TestCoverage:
    @pytest.mark.parametrize("name", list(METHODS))
    def test_every_method_textures_the_covered_pixels(self, name):
        for tri, (xs, ys, us, vs) in zip(SCENE.triangles, _run(name)):
            pixels = set(zip(xs.astype(int).tolist(), ys.astype(int).tolist()))
            assert pixels == covered_pixels(tri)
            assert len(xs) == len(pixels) == us.size == vs.size


class TestAccuracy:
    def test_exact_is_exact(self):
        for xs, ys, us, vs in _run("exact"):
            eu, ev = exact_uv_array(SCENE.m, xs, ys)
            np.testing.assert_array_equal(us, eu)
            np.testing.assert_array_equal(vs, ev)

    def test_midpoint_stays_in_its_band(self):
        for xs, ys, us, vs in _run("midpoint"):
            eu, ev = exact_uv_array(SCENE.m, xs, ys)
            assert np.abs(us - eu).max() <= PARAMS.du / 2 + 1e-9
            assert np.abs(vs - ev).max() <= PARAMS.du / 2 + 1e-9

    @pytest.mark.parametrize("name", ["nrl", "adaptive"])
    def test_line_methods_are_near_exact(self, name):
        for xs, ys, us, vs in _run(name):
            eu, _ = exact_uv_array(SCENE.m, xs, ys)
            assert np.abs(us - eu).max() < 2e-3

    def test_affine_swims_on_a_perspective_quad(self):
        worst = max(np.abs(us - exact_uv_array(SCENE.m, xs, ys)[0]).max() for xs, ys, us, _ in _run("affine"))
        assert worst > 0.01

    def test_affine_is_exact_for_an_affine_map(self):
        m = ProjectiveTexMap.affine(0.01, 0.002, 0.1, -0.003, 0.008, 0.3)
        for tri in SCENE.triangles:
            xs, ys, us, vs = get_method("affine").run(m, tri, PARAMS)
            eu, ev = exact_uv_array(m, xs, ys)
            np.testing.assert_allclose(us, eu, atol=1e-9)
            np.testing.assert_allclose(vs, ev, atol=1e-9)


CLASS_MAPS = {
    MapClass.AFFINE: ProjectiveTexMap.affine(0.01, 0.002, 0.1, -0.003, 0.008, 0.3),
    MapClass.ROW_CONSTANT_V: ProjectiveTexMap(0.01, 0.002, 0.1, 0.0, 0.008, 0.3, 0.0, 0.004, 1.0),
    MapClass.COL_CONSTANT_U: ProjectiveTexMap(0.01, 0.0, 0.1, -0.003, 0.008, 0.3, 0.004, 0.0, 1.0),
    MapClass.GENERAL: ProjectiveTexMap(0.01, 0.002, 0.1, -0.003, 0.008, 0.3, 0.004, 0.003, 1.0),
}
TRIANGLE = ScreenTriangle.from_points([(5.3, 4.1), (60.7, 18.2), (22.4, 57.9)])
BETWEEN_CENTRES = ScreenTriangle.from_points([(0.1, 0.1), (0.3, 0.1), (0.1, 0.3)])
SPECIALIZED = [MapClass.AFFINE, MapClass.ROW_CONSTANT_V, MapClass.COL_CONSTANT_U]


class TestAdaptive:
    @pytest.mark.parametrize("cls", list(CLASS_MAPS), ids=str)
    def test_maps_cover_every_class(self, cls):
        assert classify_map(CLASS_MAPS[cls]) is cls

    @pytest.mark.parametrize("cls", SPECIALIZED, ids=str)
    def test_matches_exact_division(self, cls):
        m = CLASS_MAPS[cls]
        xs, ys, us, vs = get_method("adaptive").run(m, TRIANGLE, PARAMS)
        pixels = set(zip(xs.astype(int).tolist(), ys.astype(int).tolist()))
        assert pixels == covered_pixels(TRIANGLE)
        assert xs.size == len(pixels)
        eu, ev = exact_uv_array(m, xs, ys)
        np.testing.assert_allclose(us, eu, rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(vs, ev, rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("cls", list(CLASS_MAPS), ids=str)
    def test_triangle_between_pixel_centres(self, cls):
        xs, ys, us, vs = get_method("adaptive").run(CLASS_MAPS[cls], BETWEEN_CENTRES, PARAMS)
        assert xs.size == ys.size == us.size == vs.size == 0

    def test_column_map_between_pixel_centres(self):
        m = ProjectiveTexMap(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.01, 0.0, 1.0)
        assert classify_map(m) is MapClass.COL_CONSTANT_U
        xs, ys, us, vs = get_method("adaptive").run(m, BETWEEN_CENTRES, PARAMS)
        assert xs.size == us.size == 0


@needs_counting
class TestDivisions:
    def test_exact_divides_twice_per_pixel(self):
        with counting() as counter:
            results = _run("exact")
        assert counter.divisions == 2 * sum(r[0].size for r in results)

    def test_nrl_divides_far_less(self):
        with counting() as exact:
            _run("exact")
        with counting() as nrl:
            _run("nrl")
        assert nrl.divisions * 10 < exact.divisions
