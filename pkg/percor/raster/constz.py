"""Rasterization along lines of constant world depth.

A triangle's plane A X + B Y + C Z = D seen through a unit-focal projection
(X_v = X / Z, Y_v = Y / Z) gives Z = D / (A X_v + B Y_v + C). On the screen
line Y_v = k X_v + h with k = -A / B the denominator is B h + C for every
X_v, so depth is constant along it and so is the projective denominator of a
texture map tied to the same plane. One division per line then buys the
whole line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from percor.errors import BehindProjection, DegenerateTriangle, HorizontalDegeneracy, SlopeMismatch
from percor.ops import tally
from percor.primitives import ScreenTriangle
from percor.raster.scanline import coverage_test
from percor.texmap.projective import ProjectiveTexMap


@dataclass(frozen=True)
class PlaneCoeffs:
    A: float
    B: float
    C: float
    D: float

    @classmethod
    def from_world_points(cls, p0, p1, p2) -> "PlaneCoeffs":
        """Plane through three world points (depth as the third coordinate)."""
        p0, p1, p2 = (np.asarray(p, dtype=float) for p in (p0, p1, p2))
        normal = np.cross(p1 - p0, p2 - p0)
        if np.linalg.norm(normal) <= 1e-12 * max(1.0, float(np.abs([p0, p1, p2]).max())) ** 2:
            raise DegenerateTriangle("world points are collinear")
        return cls(float(normal[0]), float(normal[1]), float(normal[2]), float(normal @ p0))

    @classmethod
    def from_screen_triangle(cls, xy, depths) -> "PlaneCoeffs":
        """Plane in screen form Z = 1 / (A x + B y + C) from projected vertices and their depths."""
        xy = np.asarray(xy, dtype=float)
        system = np.column_stack([xy, np.ones(3)])
        if abs(np.linalg.det(system)) <= 1e-12 * max(1.0, float(np.abs(xy).max())) ** 2:
            raise DegenerateTriangle("screen triangle has zero area")
        a, b, c = np.linalg.solve(system, 1.0 / np.asarray(depths, dtype=float))
        return cls(float(a), float(b), float(c), 1.0)

    def scale(self) -> float:
        return max(abs(getattr(self, f.name)) for f in fields(self))

    def depth(self, x, y):
        """World depth at screen point (x, y)."""
        return self.D / (self.A * np.asarray(x, dtype=float) + self.B * np.asarray(y, dtype=float) + self.C)


def constz_slope(p: PlaneCoeffs, tol: float = 1e-12) -> float:
    """Slope k of the screen lines y = k x + h of constant depth.

    A plane facing the camera (A = B = 0) has constant depth everywhere;
    horizontal lines are returned. B = 0 alone makes the lines vertical.
    """
    small = tol * p.scale()
    if abs(p.A) <= small and abs(p.B) <= small:
        return 0.0
    if abs(p.B) <= small:
        raise HorizontalDegeneracy("constant-depth lines are vertical; swap the axes")
    tally(div=1)
    return -p.A / p.B


def constz_depth(p: PlaneCoeffs, h_intercept: float) -> float:
    """Z on the constant-depth line through (0, h_intercept)."""
    den = p.B * h_intercept + p.C
    if den <= 0.0:
        raise BehindProjection(f"line y = k x + {h_intercept} is not in front of the observer")
    tally(div=1, mul=1, add=1)
    return p.D / den


def constz_texture_row(
    m: ProjectiveTexMap, k_slope: float, h_intercept: float, x_start: int, x_end: int, tol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) at integer x on the ideal line y = k x + h.

    The map's denominator must be constant along the line (g + h k = 0).
    After one reciprocal per line each coordinate costs one addition per pixel.
    """
    if abs(m.g + m.h * k_slope) > tol * m.scale():
        raise SlopeMismatch(f"denominator varies along slope {k_slope}: g + h k = {m.g + m.h * k_slope}")
    den = m.h * h_intercept + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} on line y = {k_slope} x + {h_intercept}")
    rr = 1.0 / den
    x0 = float(x_start)
    u = (m.a * x0 + m.b * (k_slope * x0 + h_intercept) + m.c) * rr
    v = (m.d * x0 + m.e * (k_slope * x0 + h_intercept) + m.f) * rr
    du = rr * (m.a + m.b * k_slope)
    dv = rr * (m.d + m.e * k_slope)
    tally(div=1, mul=12, add=10)

    n = x_end - x_start + 1
    us = np.empty(n)
    vs = np.empty(n)
    for j in range(n):
        us[j] = u
        vs[j] = v
        u += du
        v += dv
    tally(add=2 * max(n - 1, 0))
    return us, vs


def _round_half_up(value):
    return np.floor(np.asarray(value, dtype=float) + 0.5)


@dataclass(frozen=True)
class ShearedRect:
    """Rectangle circumscribing a triangle under a sheared scan direction.

    Line c visits pixels (x, c + round(k (x - x_min))) for x_min <= x;
    ``r_offset`` is the line's rise between x_min and the top vertex.
    """

    k: float
    x_min: int
    x_max: int
    c_min: int
    c_max: int
    r_offset: float

    def line_y(self, c: int, x) -> np.ndarray:
        return c + _round_half_up(self.k * (np.asarray(x, dtype=float) - self.x_min))


def bounding_rect(tri: ScreenTriangle, k_slope: float) -> ShearedRect:
    tri = tri.oriented()
    p = tri.points()
    x_min, x_max, _, _ = tri.bounds()
    sheared = p[:, 1] - k_slope * (p[:, 0] - x_min)
    half = 0.0 if float(k_slope).is_integer() else 0.5
    top = int(np.argmin(sheared))
    return ShearedRect(
        k=k_slope,
        x_min=x_min,
        x_max=x_max,
        c_min=int(math.floor(sheared.min() - half)),
        c_max=int(math.ceil(sheared.max() + half)),
        r_offset=float(-k_slope * (p[top, 0] - x_min)),
    )


def _clip(poly: list[tuple[float, float]], nx: float, ny: float, limit: float) -> list[tuple[float, float]]:
    """Keep the part of ``poly`` with nx x + ny y <= limit."""
    out = []
    for idx, cur in enumerate(poly):
        prev = poly[idx - 1]
        fc = nx * cur[0] + ny * cur[1] - limit
        fp = nx * prev[0] + ny * prev[1] - limit
        if fc <= 0.0:
            if fp > 0.0:
                t = fp / (fp - fc)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif fp <= 0.0:
            t = fp / (fp - fc)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
    return out


def _far_x(rect: ShearedRect, tri_points: np.ndarray, c: int) -> float | None:
    """Largest x of the triangle inside the band of line c."""
    half = 0.0 if float(rect.k).is_integer() else 0.5
    k = rect.k
    poly = [(float(x), float(y)) for x, y in tri_points]
    # y - k (x - x_min) <= c + half  and  >= c - half
    poly = _clip(poly, -k, 1.0, c + half - k * rect.x_min + 1e-9)
    if poly:
        poly = _clip(poly, k, -1.0, -(c - half) + k * rect.x_min + 1e-9)
    if not poly:
        return None
    return max(x for x, _ in poly)


def sheared_traversal(rect: ShearedRect, tri: ScreenTriangle) -> list[tuple[int, int, bool]]:
    """Visit order over the sheared rectangle as (x, y, inside) triples.

    Each line runs from the rectangle's left side and is left as soon as it
    passes the triangle's right edge, so the area behind that edge is never
    visited.
    """
    tri = tri.oriented()
    points = tri.points()
    inside = coverage_test(tri)
    visits = []
    for c in range(rect.c_min, rect.c_max + 1):
        far = _far_x(rect, points, c)
        if far is None:
            continue
        stop = min(rect.x_max, int(math.floor(far + 1e-9)))
        for x in range(rect.x_min, stop + 1):
            y = int(rect.line_y(c, x))
            visits.append((x, y, inside(x, y)))
    return visits


def constz_texture_triangle(m: ProjectiveTexMap, tri: ScreenTriangle, k_slope: float):
    """Texture a triangle line by line along constant-depth lines.

    Values are taken on each ideal line at the pixel abscissas, so they carry
    the sub-pixel offset between a pixel centre and its line. Returns
    (pixels, us, vs, lines) where ``lines`` counts the lines that reached a
    pixel (one division each).
    """
    rect = bounding_rect(tri, k_slope)
    by_line: dict[int, list[tuple[int, int]]] = {}
    for x, y, inside in sheared_traversal(rect, tri):
        if inside:
            c = y - int(_round_half_up(k_slope * (x - rect.x_min)))
            by_line.setdefault(c, []).append((x, y))
    pixels: list[tuple[int, int]] = []
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for c, run in sorted(by_line.items()):
        xs = [x for x, _ in run]
        row_u, row_v = constz_texture_row(m, k_slope, c - k_slope * rect.x_min, min(xs), max(xs))
        keep = np.array(xs) - min(xs)
        pixels.extend(run)
        us.append(row_u[keep])
        vs.append(row_v[keep])
    if not pixels:
        return pixels, np.empty(0), np.empty(0), 0
    return pixels, np.concatenate(us), np.concatenate(vs), len(by_line)
