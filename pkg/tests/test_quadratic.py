import numpy as np
import pytest

from percor.errors import AnchorOutOfRange, CoincidentNodes, SingularSystem
from percor.ops import counting
from percor.texmap.quadratic import (
    ANCHOR_TABLE,
    anchor_table_coeffs,
    fit_bivariate,
    quad_fit_anchored,
    quad_fit_cubic,
    quad_fit_normalized,
    quad_fit_unnormalized,
    recommend_anchor,
    triangle_control_points,
)
from tests.conftest import needs_counting


class TestRowFits:
    def test_normalized_interpolates(self):
        fit = quad_fit_normalized(0.2, 0.45, 0.9)
        np.testing.assert_allclose(fit(np.array([0.0, 0.5, 1.0])), [0.2, 0.45, 0.9])

    def test_printed_form_misses_the_end(self):
        fit = quad_fit_normalized(0.2, 0.45, 0.9, printed=True)
        assert fit(1.0) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("x_int", sorted(ANCHOR_TABLE))
    def test_anchored_interpolates(self, x_int):
        fit = quad_fit_anchored(x_int, 0.1, 0.3, 0.8)
        np.testing.assert_allclose(fit(np.array([0.0, x_int, 1.0])), [0.1, 0.3, 0.8], atol=1e-12)

    @needs_counting
    def test_anchored_operation_count(self):
        with counting() as counter:
            quad_fit_anchored(0.25, 0.1, 0.3, 0.8)
        assert (counter.divisions, counter.multiplications, counter.additions) == (1, 5, 5)

    @pytest.mark.parametrize("x_int", [0.0, 1.0, 1.2])
    def test_anchor_range(self, x_int):
        with pytest.raises(AnchorOutOfRange):
            quad_fit_anchored(x_int, 0.0, 0.5, 1.0)

    @pytest.mark.parametrize("x_int", sorted(ANCHOR_TABLE))
    def test_table_rows_agree_with_the_exact_fit(self, x_int):
        """Four-digit table coefficients reproduce A and B to about 1e-3."""
        fit = quad_fit_anchored(x_int, 0.15, 0.4, 0.95)
        a, b = anchor_table_coeffs(x_int, 0.15, 0.4, 0.95)
        assert a == pytest.approx(fit.A, abs=2e-3)
        assert b == pytest.approx(fit.B, abs=2e-3)

    def test_recommend_anchor(self):
        assert recommend_anchor(0.01, 0.8) == 0.25
        assert recommend_anchor(0.6, 0.02) == 0.75
        assert recommend_anchor(0.98, 0.5) == 0.6
        assert recommend_anchor(0.3, 0.99) == 0.4
        assert recommend_anchor(0.4, 0.6) == 0.5

    def test_unnormalized_interpolates_raw_nodes(self):
        fit = quad_fit_unnormalized(10.0, 25.0, 40.0, 0.1, 0.35, 0.7)
        np.testing.assert_allclose(fit(np.array([10.0, 25.0, 40.0])), [0.1, 0.35, 0.7], atol=1e-12)

    def test_coincident_nodes(self):
        with pytest.raises(CoincidentNodes):
            quad_fit_unnormalized(3.0, 3.0, 9.0, 0.0, 0.5, 1.0)

    def test_cubic_interpolates(self):
        coeffs = quad_fit_cubic(0.0, 0.2, 0.55, 1.0)
        np.testing.assert_allclose(np.polyval(coeffs, [0.0, 1 / 3, 2 / 3, 1.0]), [0.0, 0.2, 0.55, 1.0], atol=1e-12)


class TestBivariate:
    TRIANGLE = ((10.0, 12.0), (70.0, 20.0), (30.0, 64.0))

    @staticmethod
    def poly(x, y):
        return 0.5 + 0.01 * x - 0.02 * y + 1e-4 * x * x - 2e-4 * x * y + 3e-5 * y * y

    @pytest.mark.parametrize("degree, count", [("biquadratic", 6), ("bicubic", 10)])
    def test_control_point_counts(self, degree, count):
        assert triangle_control_points(self.TRIANGLE, degree).shape == (count, 2)

    @pytest.mark.parametrize("degree, centered", [("biquadratic", False), ("biquadratic", True), ("bicubic", True)])
    def test_reproduces_a_quadratic(self, degree, centered):
        nodes = triangle_control_points(self.TRIANGLE, degree)
        points = [(x, y, self.poly(x, y)) for x, y in nodes]
        fit = fit_bivariate(points, degree, centered=centered)
        xs = np.array([20.0, 35.0, 40.0])
        ys = np.array([20.0, 30.0, 25.0])
        np.testing.assert_allclose(fit(xs, ys), self.poly(xs, ys), atol=1e-8)

    def test_collinear_points_are_singular(self):
        points = [(float(k), 2.0 * k, 0.1 * k) for k in range(6)]
        with pytest.raises(SingularSystem):
            fit_bivariate(points, "biquadratic")

    def test_wrong_point_count(self):
        with pytest.raises(ValueError):
            fit_bivariate([(0.0, 0.0, 0.0)] * 5, "biquadratic")
