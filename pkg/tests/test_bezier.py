import numpy as np
import pytest

from percor.analysis import wall_row
from percor.errors import AffineRow, CoincidentNodes
from percor.texmap.bezier import (
    bezier_eval_fd,
    bezier_param_iterative,
    bezier_param_quadratic,
    bezier_row,
    bezier_row_uv,
)
from percor.texmap.projective import ProjectiveTexMap, derive_from_quad, exact_uv, exact_uv_array

WALL = wall_row(2.0, 10, 60)
TILTED = derive_from_quad(((1.0, 1.0), (32.0, 96.0), (96.0, 128.0), (128.0, 32.0)), ((0, 0), (0, 1), (1, 1), (1, 0)))


class TestBezierRow:
    def test_ends_are_exact(self):
        row = bezier_row(WALL, 0.0, 10, 70)
        x, u, v = row.point(0.0)
        assert (x, u, v) == pytest.approx((10.0, *exact_uv(WALL, 10.0, 0.0)))
        x, u, v = row.point(1.0)
        assert (x, u, v) == pytest.approx((70.0, *exact_uv(WALL, 70.0, 0.0)))

    def test_affine_row(self):
        with pytest.raises(AffineRow):
            bezier_row(ProjectiveTexMap.affine(0.01, 0.0, 0.0, 0.0, 0.01, 0.0), 0.0, 0, 10)

    def test_single_pixel_row(self):
        with pytest.raises(CoincidentNodes):
            bezier_row(WALL, 0.0, 5, 5)

    def test_advance_matches_a_fresh_row(self):
        """Stepping the row constants gives the control points of the next row."""
        row = bezier_row(TILTED, 50.0, 30, 90).advance()
        fresh = bezier_row(TILTED, 51.0, 30, 90)
        np.testing.assert_allclose(row.xs, fresh.xs, rtol=1e-9)
        np.testing.assert_allclose(row.us, fresh.us, rtol=1e-9)
        np.testing.assert_allclose(row.vs, fresh.vs, rtol=1e-9)

    def test_forward_differences_follow_the_curve(self):
        row = bezier_row(TILTED, 40.0, 20, 100)
        xs, us, vs = bezier_eval_fd(row, 0.01)
        t = np.linspace(0.0, 1.0, 101)
        px, pu, pv = row.point(t)
        np.testing.assert_allclose(xs, px, atol=1e-9)
        np.testing.assert_allclose(us, pu, atol=1e-9)
        np.testing.assert_allclose(vs, pv, atol=1e-9)

    def test_forward_difference_step(self):
        with pytest.raises(ValueError):
            bezier_eval_fd(bezier_row(WALL, 0.0, 10, 70), 0.0)


class TestParameters:
    def test_iterative_lands_on_every_pixel(self):
        row = bezier_row(WALL, 0.0, 10, 70)
        ts = bezier_param_iterative(row, eps=1e-3)
        assert ts[0] == 0.0
        assert ts[-1] == 1.0
        for i, t in enumerate(ts[1:-1], start=1):
            assert abs(row.x_at(t) - (10 + i)) <= 1e-3
        assert len(row.t_kor) == len(ts) - 2

    def test_quadratic_parameter_hits_its_nodes(self):
        row = bezier_row(WALL, 0.0, 10, 70)
        fit = bezier_param_quadratic(*row.xs)
        assert fit(row.xs[0]) == pytest.approx(0.0, abs=1e-9)
        assert fit(row.xs[2]) == pytest.approx(1.0)
        assert fit(row.x_at(0.5)) == pytest.approx(0.5)

    @pytest.mark.parametrize("param", ["iterative", "quadratic"])
    def test_row_uv_is_close_to_exact(self, param):
        us, vs = bezier_row_uv(WALL, 0.0, 10, 70, param=param)
        eu, ev = exact_uv_array(WALL, np.arange(10.0, 71.0), np.zeros(61))
        assert np.abs(us - eu).max() < 0.02
        np.testing.assert_allclose(vs, ev, atol=1e-9)

    def test_unknown_parameter_method(self):
        with pytest.raises(ValueError):
            bezier_row_uv(WALL, 0.0, 10, 70, param="newton")
