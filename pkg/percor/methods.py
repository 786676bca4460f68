"""Registry of texture-coordinate methods.

Every method has the same shape: given a projective map and a screen triangle
it returns the covered pixels and the (u, v) it assigns to them, as four
arrays xs, ys, us, vs. Row methods work span by span on the scanline
coverage; the NRL methods walk their own line family over the same pixels.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

import numpy as np

from percor.errors import AffineRow, UnknownMethod
from percor.primitives import ScreenTriangle
from percor.raster.nrl import nrl_traverse
from percor.raster.scanline import Span, scanline_triangle
from percor.texmap.bezier import bezier_row_uv
from percor.texmap.midpoint import midpoint_scan_row
from percor.texmap.projective import (
    MapClass,
    ProjectiveTexMap,
    classify_map,
    column_uv_specialized,
    exact_uv_array,
    map_from_triangle,
    row_uv_specialized,
)
from percor.texmap.quadratic import (
    fit_bivariate,
    quad_fit_anchored,
    quad_fit_cubic,
    quad_fit_normalized,
    quad_fit_unnormalized,
    recommend_anchor,
    triangle_control_points,
)


@dataclass(frozen=True)
class MethodParams:
    du: float = 1.0 / 256
    x_int: float | None = None  # None picks the anchor per row
    eps: float = 1e-3
    dt0: float | None = None
    near: float = 0.05


Result = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
RowFn = Callable[[ProjectiveTexMap, Span, MethodParams], tuple[np.ndarray, np.ndarray]]


def _span_xs(span: Span) -> np.ndarray:
    return np.arange(span.x_start, span.x_end + 1, dtype=float)


def _by_rows(
    row_fn: RowFn, single_exact: bool = True
) -> Callable[[ProjectiveTexMap, ScreenTriangle, MethodParams], Result]:
    """Run ``row_fn`` over the scanline spans; one-pixel spans go to exact unless told otherwise."""

    def run(m: ProjectiveTexMap, tri: ScreenTriangle, params: MethodParams) -> Result:
        xs, ys, us, vs = [], [], [], []
        for span in scanline_triangle(tri):
            row_x = _span_xs(span)
            if single_exact and span.x_start == span.x_end:
                u, v = exact_uv_array(m, row_x, np.full(1, float(span.y)))
            else:
                u, v = row_fn(m, span, params)
            xs.append(row_x)
            ys.append(np.full(row_x.size, float(span.y)))
            us.append(np.asarray(u, dtype=float))
            vs.append(np.asarray(v, dtype=float))
        if not xs:
            empty = np.empty(0)
            return empty, empty, empty, empty
        return np.concatenate(xs), np.concatenate(ys), np.concatenate(us), np.concatenate(vs)

    return run


def _exact_at(m: ProjectiveTexMap, xs, y: float) -> tuple[np.ndarray, np.ndarray]:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    return exact_uv_array(m, xs, np.full(xs.size, float(y)))


def _row_exact(m, span, params):
    return _exact_at(m, _span_xs(span), span.y)


def _row_midpoint(m, span, params):
    return midpoint_scan_row(m, span.y, span.x_start, span.x_end, params.du)


def _row_quad(m, span, params):
    length = span.x_end - span.x_start
    nodes_u, nodes_v = _exact_at(m, [span.x_start, span.x_start + 0.5 * length, span.x_end], span.y)
    t = (_span_xs(span) - span.x_start) / length
    return quad_fit_normalized(*nodes_u)(t), quad_fit_normalized(*nodes_v)(t)


def _row_quad_anchored(m, span, params):
    length = span.x_end - span.x_start
    ends_u, ends_v = _exact_at(m, [span.x_start, span.x_end], span.y)
    t = (_span_xs(span) - span.x_start) / length
    out = []
    for coord, (u0, u1) in enumerate((ends_u, ends_v)):
        x_int = params.x_int if params.x_int is not None else recommend_anchor(u0, u1, params.near)
        inner = _exact_at(m, [span.x_start + x_int * length], span.y)[coord][0]
        out.append(quad_fit_anchored(x_int, u0, inner, u1)(t))
    return out[0], out[1]


def _row_quad_unnorm(m, span, params):
    nodes = [float(span.x_start), 0.5 * (span.x_start + span.x_end), float(span.x_end)]
    nodes_u, nodes_v = _exact_at(m, nodes, span.y)
    xs = _span_xs(span)
    return quad_fit_unnormalized(*nodes, *nodes_u)(xs), quad_fit_unnormalized(*nodes, *nodes_v)(xs)


def _row_cubic(m, span, params):
    length = span.x_end - span.x_start
    nodes = span.x_start + length * np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
    nodes_u, nodes_v = _exact_at(m, nodes, span.y)
    t = (_span_xs(span) - span.x_start) / length
    return np.polyval(quad_fit_cubic(*nodes_u), t), np.polyval(quad_fit_cubic(*nodes_v), t)


def _bezier(param: str) -> RowFn:
    def row(m, span, params):
        try:
            return bezier_row_uv(m, span.y, span.x_start, span.x_end, param=param, eps=params.eps, dt0=params.dt0)
        except AffineRow:
            return _row_exact(m, span, params)

    return row


def _bivariate(degree: str):
    def run(m: ProjectiveTexMap, tri: ScreenTriangle, params: MethodParams) -> Result:
        nodes = triangle_control_points(tri.points(), degree)
        node_u, node_v = exact_uv_array(m, nodes[:, 0], nodes[:, 1])
        fit_u = fit_bivariate(np.column_stack([nodes, node_u]), degree, centered=True)
        fit_v = fit_bivariate(np.column_stack([nodes, node_v]), degree, centered=True)
        xs, ys = _covered(tri)
        return xs, ys, fit_u(xs, ys), fit_v(xs, ys)

    return run


def _covered(tri: ScreenTriangle) -> tuple[np.ndarray, np.ndarray]:
    pixels = [p for span in scanline_triangle(tri) for p in span.pixels()]
    if not pixels:
        return np.empty(0), np.empty(0)
    arr = np.array(pixels, dtype=float)
    return arr[:, 0], arr[:, 1]


def _affine(m: ProjectiveTexMap, tri: ScreenTriangle, params: MethodParams) -> Result:
    """Screen-linear interpolation of the exact vertex coordinates."""
    p = tri.points()
    vert_u, vert_v = exact_uv_array(m, p[:, 0], p[:, 1])
    flat = map_from_triangle(p, np.ones(3), np.column_stack([vert_u, vert_v]))

    def row(_m, span, _p):
        return row_uv_specialized(flat, span.y, span.x_start, span.x_end, MapClass.AFFINE)

    return _by_rows(row, single_exact=False)(flat, tri, params)


def _nrl(m: ProjectiveTexMap, tri: ScreenTriangle, params: MethodParams) -> Result:
    pixels, _ = nrl_traverse(m, tri)
    if not pixels:
        empty = np.empty(0)
        return empty, empty, empty, empty
    arr = np.array([(p.x, p.y, p.u, p.v) for p in pixels], dtype=float)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]


def _adaptive(m: ProjectiveTexMap, tri: ScreenTriangle, params: MethodParams) -> Result:
    """Cheapest exact path for the map's class."""
    cls = classify_map(m)
    if cls in (MapClass.AFFINE, MapClass.ROW_CONSTANT_V):

        def row(_m, span, _p):
            return row_uv_specialized(_m, span.y, span.x_start, span.x_end, cls)

        return _by_rows(row, single_exact=False)(m, tri, params)
    if cls is MapClass.COL_CONSTANT_U:
        columns: dict[int, list[int]] = defaultdict(list)
        for span in scanline_triangle(tri):
            for x in range(span.x_start, span.x_end + 1):
                columns[x].append(span.y)
        xs, ys, us, vs = [], [], [], []
        for x, col in sorted(columns.items()):
            col_u, col_v = column_uv_specialized(m, x, col[0], col[-1], cls)
            xs.append(np.full(len(col), float(x)))
            ys.append(np.arange(col[0], col[-1] + 1, dtype=float))
            us.append(col_u)
            vs.append(col_v)
        if not xs:
            empty = np.empty(0)
            return empty, empty, empty, empty
        return np.concatenate(xs), np.concatenate(ys), np.concatenate(us), np.concatenate(vs)
    return _nrl(m, tri, params)


@dataclass(frozen=True)
class UvMethod:
    name: str
    run: Callable[[ProjectiveTexMap, ScreenTriangle, MethodParams], Result]
    description: str


METHODS: dict[str, UvMethod] = {
    method.name: method
    for method in (
        UvMethod("exact", _by_rows(_row_exact), "two divisions per pixel"),
        UvMethod("affine", _affine, "screen-linear interpolation, no divisions"),
        UvMethod("midpoint", _by_rows(_row_midpoint), "division-free lattice stepping with W/Q bands"),
        UvMethod("quad", _by_rows(_row_quad), "row quadratic through start, middle and end"),
        UvMethod("quad-anchored", _by_rows(_row_quad_anchored), "row quadratic with a shifted internal node"),
        UvMethod("quad-unnorm", _by_rows(_row_quad_unnorm), "row quadratic in raw x, one division per row"),
        UvMethod("cubic", _by_rows(_row_cubic), "row cubic through the thirds"),
        UvMethod("bezier", _by_rows(_bezier("iterative")), "Bezier row, iterative parameter search"),
        UvMethod("bezier-quad", _by_rows(_bezier("quadratic")), "Bezier row, quadratic t(x)"),
        UvMethod("bivariate2", _bivariate("biquadratic"), "biquadratic fit over the triangle"),
        UvMethod("bivariate3", _bivariate("bicubic"), "bicubic fit over the triangle"),
        UvMethod("nrl", _nrl, "constant-denominator lines with first-order correction"),
        UvMethod("adaptive", _adaptive, "special-case exact path chosen from the map class"),
    )
}


def get_method(name: str) -> UvMethod:
    try:
        return METHODS[name]
    except KeyError:
        raise UnknownMethod(f"unknown method {name!r}; valid methods: {', '.join(METHODS)}") from None
