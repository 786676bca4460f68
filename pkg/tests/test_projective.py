import numpy as np
import pytest

from percor.errors import BehindProjection, ClassMismatch, DegenerateQuad
from percor.ops import counting
from percor.texmap.projective import (
    MapClass,
    ProjectiveTexMap,
    classify_map,
    column_uv_specialized,
    derive_from_quad,
    exact_uv,
    exact_uv_array,
    map_from_triangle,
    row_uv_specialized,
)
from tests.conftest import needs_counting

CORNERS = ((1.0, 1.0), (32.0, 96.0), (96.0, 128.0), (128.0, 32.0))
UNIT = ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0))

ROW_CONSTANT_V = ProjectiveTexMap(0.01, 0.002, 0.1, 0.0, 0.01, 0.2, 0.0, 0.001, 1.0)
COL_CONSTANT_U = ProjectiveTexMap(0.01, 0.0, 0.1, 0.002, 0.01, 0.2, 0.001, 0.0, 1.0)


class TestDerive:
    def test_corners_map_to_their_uvs(self):
        m = derive_from_quad(CORNERS, UNIT)
        for (x, y), uv in zip(CORNERS, UNIT):
            np.testing.assert_allclose(exact_uv(m, x, y), uv, atol=1e-12)

    def test_normalized_with_positive_denominator(self):
        m = derive_from_quad(CORNERS, UNIT)
        assert m.i == pytest.approx(1.0)
        xs, ys = np.array(CORNERS).T
        assert np.all(m.denominator(xs, ys) > 0.0)

    def test_parallelogram_is_affine(self):
        m = derive_from_quad(((0.0, 0.0), (10.0, 40.0), (60.0, 40.0), (50.0, 0.0)), UNIT)
        assert classify_map(m) is MapClass.AFFINE

    def test_collinear_corners(self):
        with pytest.raises(DegenerateQuad):
            derive_from_quad(((0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (0.0, 5.0)), UNIT)

    def test_triangle_map_hits_vertex_uvs(self):
        xy = ((10.0, 5.0), (80.0, 20.0), (30.0, 90.0))
        uv = ((0.0, 0.0), (1.0, 0.2), (0.4, 1.0))
        m = map_from_triangle(xy, (1.0, 3.0, 2.0), uv)
        for (x, y), expected in zip(xy, uv):
            np.testing.assert_allclose(exact_uv(m, x, y), expected, atol=1e-12)

    def test_triangle_map_is_affine_at_equal_depths(self):
        m = map_from_triangle(((0.0, 0.0), (9.0, 1.0), (2.0, 7.0)), (5.0, 5.0, 5.0), ((0, 0), (1, 0), (0, 1)))
        assert classify_map(m) is MapClass.AFFINE


class TestExact:
    def test_behind_projection(self):
        m = ProjectiveTexMap(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0)
        with pytest.raises(BehindProjection):
            exact_uv(m, 2.0, 0.0)

    def test_array_matches_scalar(self):
        m = derive_from_quad(CORNERS, UNIT)
        us, vs = exact_uv_array(m, [10.0, 50.0], [20.0, 60.0])
        assert (us[1], vs[1]) == pytest.approx(exact_uv(m, 50.0, 60.0))

    @needs_counting
    def test_two_divisions_per_pixel(self):
        m = derive_from_quad(CORNERS, UNIT)
        with counting() as counter:
            exact_uv_array(m, np.arange(10.0), np.full(10, 40.0))
        assert counter.divisions == 20


class TestSpecialized:
    def test_classes(self):
        assert classify_map(ROW_CONSTANT_V) is MapClass.ROW_CONSTANT_V
        assert classify_map(COL_CONSTANT_U) is MapClass.COL_CONSTANT_U
        assert classify_map(derive_from_quad(CORNERS, UNIT)) is MapClass.GENERAL

    def test_row_matches_exact(self):
        us, vs = row_uv_specialized(ROW_CONSTANT_V, 30.0, 5, 40, MapClass.ROW_CONSTANT_V)
        eu, ev = exact_uv_array(ROW_CONSTANT_V, np.arange(5.0, 41.0), np.full(36, 30.0))
        np.testing.assert_allclose(us, eu, rtol=1e-12)
        np.testing.assert_allclose(vs, ev, rtol=1e-12)

    def test_column_matches_exact(self):
        us, vs = column_uv_specialized(COL_CONSTANT_U, 12.0, 0, 25, "col-constant-u")
        eu, ev = exact_uv_array(COL_CONSTANT_U, np.full(26, 12.0), np.arange(26.0))
        np.testing.assert_allclose(us, eu, rtol=1e-12)
        np.testing.assert_allclose(vs, ev, rtol=1e-12)

    def test_class_mismatch(self):
        with pytest.raises(ClassMismatch):
            row_uv_specialized(derive_from_quad(CORNERS, UNIT), 10.0, 0, 5, MapClass.ROW_CONSTANT_V)

    @needs_counting
    def test_row_constant_v_divides_once(self):
        with counting() as counter:
            row_uv_specialized(ROW_CONSTANT_V, 3.0, 0, 99, MapClass.ROW_CONSTANT_V)
        assert counter.divisions == 1
