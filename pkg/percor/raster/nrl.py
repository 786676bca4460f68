"""Texturing along non-orthogonal rasterization lines (NRLs).

Along any line of slope dy = -g/h the projective denominator g x + h y + i is
constant, so one reciprocal k per line replaces the per-pixel divisions. Lines
are anchored on the y axis (x = 0) at integer intercepts y0 and discretized
as y_i = y0 + round(dy x_i); neighbouring lines are one pixel apart at every
x, so the family covers the plane without gaps or repeats.

A pixel lies r_i = dy x_i - round(dy x_i) below its ideal line, where the
denominator is 1/k - h r_i. The first-order correction kor = k + r_i k^2 h
restores its reciprocal to within (r_i h k)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple

import numpy as np

from percor.errors import BehindProjection, HDegenerate
from percor.ops import tally
from percor.primitives import ScreenTriangle
from percor.raster.scanline import coverage_test
from percor.texmap.projective import ProjectiveTexMap


class Rounding(StrEnum):
    NEAREST = "nearest"
    CEIL = "ceil"


def _discretize(value: float, rounding: Rounding) -> float:
    if rounding is Rounding.CEIL:
        return math.ceil(value)
    return math.floor(value + 0.5)


@dataclass(frozen=True)
class NrlFamily:
    """The slope shared by every NRL of a map."""

    dy: float
    rounding: Rounding = Rounding.NEAREST

    def line_of(self, x: int, y: int) -> int:
        """Intercept of the NRL that owns pixel (x, y)."""
        return int(y - _discretize(self.dy * x, self.rounding))


@dataclass(frozen=True)
class NrlState:
    """One NRL: its intercept, reciprocal denominator and the cached k^2 h."""

    family: NrlFamily
    y0: int
    k: float
    k2h: float


class NrlPixel(NamedTuple):
    x: int
    y: int
    u: float
    v: float
    r: float
    kor: float


def nrl_setup(m: ProjectiveTexMap, rounding: Rounding | str = Rounding.NEAREST, tol: float = 1e-12) -> NrlFamily:
    """Slope of the constant-denominator lines (one division per polygon)."""
    if abs(m.h) <= tol * m.scale():
        raise HDegenerate("h is zero: constant-denominator lines are vertical")
    tally(div=1)
    return NrlFamily(-m.g / m.h, Rounding(rounding))


def nrl_line(m: ProjectiveTexMap, family: NrlFamily, y0: int) -> NrlState:
    """Reciprocal denominator of the line through (0, y0) (one division per line)."""
    den = m.h * y0 + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} on the NRL through (0, {y0})")
    k = 1.0 / den
    tally(div=1, mul=3, add=1)
    return NrlState(family, y0, k, k * k * m.h)


def nrl_uv(m: ProjectiveTexMap, s: NrlState, x: int) -> NrlPixel:
    """(u, v) at the line's pixel in column x: 8 multiplications and 7 additions."""
    t = s.family.dy * x
    step = _discretize(t, s.family.rounding)
    y = s.y0 + step
    r = t - step
    kor = s.k + r * s.k2h
    u = (m.a * x + m.b * y + m.c) * kor
    v = (m.d * x + m.e * y + m.f) * kor
    tally(mul=8, add=7)
    return NrlPixel(int(x), int(y), u, v, r, kor)


def _vertical_traverse(m: ProjectiveTexMap, tri: ScreenTriangle) -> tuple[list[NrlPixel], int]:
    inside = coverage_test(tri)
    pixels = []
    columns = 0
    x_min, x_max, y_min, y_max = tri.bounds()
    for x in range(x_min, x_max + 1):
        ys = [y for y in range(y_min, y_max + 1) if inside(x, y)]
        if not ys:
            continue
        den = m.g * x + m.i
        if den <= 0.0:
            raise BehindProjection(f"denominator {den} on column {x}")
        k = 1.0 / den
        tally(div=1, mul=1, add=1)
        columns += 1
        for y in ys:
            pixels.append(NrlPixel(x, y, (m.a * x + m.b * y + m.c) * k, (m.d * x + m.e * y + m.f) * k, 0.0, k))
            tally(mul=6, add=4)
    return pixels, columns


def nrl_traverse(
    m: ProjectiveTexMap, tri: ScreenTriangle, rounding: Rounding | str = Rounding.NEAREST
) -> tuple[list[NrlPixel], int]:
    """Texture every covered pixel of ``tri`` along NRLs.

    Returns the pixels in visit order and q, the number of lines that reached
    at least one pixel. The divisions are 1 + q. A map with h = 0 has
    vertical constant-denominator lines and is walked by columns instead
    (q divisions).
    """
    try:
        family = nrl_setup(m, rounding)
    except HDegenerate:
        return _vertical_traverse(m, tri)

    tri = tri.oriented()
    p = tri.points()
    x_min, x_max, _, _ = tri.bounds()
    offsets = p[:, 1] - family.dy * p[:, 0]
    first = int(math.floor(offsets.min())) - 1
    last = int(math.ceil(offsets.max())) + 1

    inside = coverage_test(tri)
    pixels: list[NrlPixel] = []
    lines = 0
    for y0 in range(first, last + 1):
        state = None
        for x in range(x_min, x_max + 1):
            y = y0 + int(_discretize(family.dy * x, family.rounding))
            if not inside(x, y):
                continue
            if state is None:
                state = nrl_line(m, family, y0)
                lines += 1
            pixels.append(nrl_uv(m, state, x))
    return pixels, lines


def nrl_ideal_denominators(m: ProjectiveTexMap, family: NrlFamily, y0: int, xs) -> np.ndarray:
    """g x + h y + i on the undiscretized line through (0, y0)."""
    xs = np.asarray(xs, dtype=float)
    return m.g * xs + m.h * (y0 + family.dy * xs) + m.i
