import numpy as np
import pytest

from percor.errors import InvalidDepth, ParallelNormals
from percor.shade import (
    EdgeDepthPair,
    IntensityPair,
    TwKind,
    chord_parameter,
    gouraud_error,
    gouraud_error_bound,
    gouraud_w,
    lerp_normal,
    make_normal_frame,
    perspective_lerp,
    slerp_perspective,
    slerp_perspective_batch,
    tw_exact,
    tw_fit,
    tw_from_ratio,
    tw_max_error,
)

U = np.linspace(0.0, 1.0, 11)


class TestGouraud:
    def test_invalid_depth(self):
        with pytest.raises(InvalidDepth):
            EdgeDepthPair(0.0, 2.0)

    def test_endpoints_are_fixed(self):
        d = EdgeDepthPair(2.0, 7.0)
        assert gouraud_w(0.0, d) == 0.0
        assert gouraud_w(1.0, d) == pytest.approx(1.0)

    def test_equal_depths_need_no_correction(self):
        np.testing.assert_allclose(gouraud_w(U, EdgeDepthPair(3.0, 3.0)), U)

    def test_perspective_lerp_matches_world_interpolation(self):
        """The screen midpoint of a receding edge is a quarter of the way along it in the world."""
        d = EdgeDepthPair(1.0, 3.0)
        value = perspective_lerp((0.0, 0.0, 0.0), (1.0, 0.5, 0.0), 0.5, d)
        np.testing.assert_allclose(value, [0.25, 0.125, 0.0])

    def test_error_is_linear_minus_correct(self):
        d = EdgeDepthPair(1.0, 4.0)
        ip = IntensityPair(0.2, 0.9)
        np.testing.assert_allclose(gouraud_error(U, d, ip), 0.7 * (U - gouraud_w(U, d)), atol=1e-15)

    def test_error_bound(self):
        assert gouraud_error_bound(EdgeDepthPair.from_ratio(1.0)) == (0.5, 0.0)
        u_star, delta = gouraud_error_bound(EdgeDepthPair.from_ratio(4.0))
        assert u_star == pytest.approx(2.0 / 3.0)
        assert delta == pytest.approx(1.0 / 3.0)

    def test_intensity_range(self):
        with pytest.raises(ValueError):
            IntensityPair(0.0, 1.5)


class TestWorldParameter:
    def test_ratio_form_matches_depth_form(self):
        np.testing.assert_allclose(tw_exact(U, EdgeDepthPair(2.0, 5.0)), tw_from_ratio(U, 2.5))

    @pytest.mark.parametrize("hbar", [2.0, 3.0, 5.0])
    @pytest.mark.parametrize(
        "kind, nodes",
        [
            (TwKind.QUADRATIC, [0.0, 0.5, 1.0]),
            (TwKind.PIECEWISE, [0.0, 0.25, 0.5, 0.75, 1.0]),
            (TwKind.CUBIC, [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]),
        ],
    )
    def test_fits_interpolate_their_nodes(self, kind, nodes, hbar):
        model = tw_fit(kind, EdgeDepthPair.from_ratio(hbar))
        np.testing.assert_allclose(model(np.array(nodes)), tw_from_ratio(np.array(nodes), hbar), atol=1e-12)

    def test_printed_piecewise_misses_the_end(self):
        model = tw_fit(TwKind.PIECEWISE, EdgeDepthPair.from_ratio(2.0), printed=True)
        assert abs(model(1.0) - 1.0) > 0.5

    def test_cubic_beats_quadratic(self):
        d = EdgeDepthPair.from_ratio(3.0)
        assert tw_max_error(tw_fit(TwKind.CUBIC, d)) < tw_max_error(tw_fit(TwKind.QUADRATIC, d))

    def test_piecewise_pointwise_error_peaks_at_the_origin(self):
        model = tw_fit(TwKind.PIECEWISE, EdgeDepthPair.from_ratio(2.0))
        assert tw_max_error(model) < 0.01
        assert tw_max_error(model, metric="pointwise") == pytest.approx(1.0 / 21.0, abs=1e-4)

    def test_pointwise_covers_the_relative_range(self):
        model = tw_fit(TwKind.QUADRATIC, EdgeDepthPair.from_ratio(4.0))
        assert tw_max_error(model, metric="pointwise") >= tw_max_error(model, metric="relative")

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            tw_max_error(tw_fit(TwKind.CUBIC, EdgeDepthPair.from_ratio(2.0)), metric="rms")

    def test_piecewise_knot(self):
        model = tw_fit("piecewise", EdgeDepthPair.from_ratio(2.0))
        assert model.knots == (0.5,)


class TestNormals:
    N_A = np.array([1.0, 0.0, 0.0])
    N_B = np.array([0.0, 0.6, 0.8])

    def test_parallel_normals(self):
        with pytest.raises(ParallelNormals):
            make_normal_frame(self.N_A, -self.N_A)

    def test_endpoints(self):
        f = make_normal_frame(self.N_A, self.N_B)
        d = EdgeDepthPair(1.0, 3.0)
        np.testing.assert_allclose(slerp_perspective(f, 0.0, d), self.N_A)
        np.testing.assert_allclose(slerp_perspective(f, 1.0, d), self.N_B, atol=1e-12)

    def test_unit_length(self):
        f = make_normal_frame(self.N_A, self.N_B)
        out = slerp_perspective(f, np.linspace(0.05, 0.95, 19), EdgeDepthPair(1.0, 4.0))
        np.testing.assert_allclose(np.linalg.norm(out, axis=1), 1.0)

    def test_equal_depths_give_constant_angular_speed(self):
        f = make_normal_frame(self.N_A, self.N_B)
        eta = np.linspace(0.1, 0.9, 9)
        np.testing.assert_allclose(slerp_perspective(f, eta, EdgeDepthPair(2.0, 2.0)), f.direction(eta * f.psi), atol=1e-12)

    def test_batch_matches_single(self):
        f = make_normal_frame(self.N_A, self.N_B)
        single = slerp_perspective(f, 0.3, EdgeDepthPair(1.0, 2.5))
        batch = slerp_perspective_batch([self.N_A, self.N_A], [self.N_B, self.N_B], [0.3, 0.3], [2.5, 2.5])
        np.testing.assert_allclose(batch[1], single, atol=1e-12)

    def test_chord_point_points_along_the_angle(self):
        """The chord parameter picks the lerped normal that is parallel to the slerped one."""
        f = make_normal_frame(self.N_A, self.N_B)
        for eta in (0.2, 0.5, 0.8):
            chord = lerp_normal(self.N_A, self.N_B, chord_parameter(f, eta))
            direction = f.direction(eta * f.psi)
            np.testing.assert_allclose(np.cross(chord, direction), 0.0, atol=1e-12)
