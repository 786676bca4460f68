"""Horizontal scanline coverage under the top-left fill rule.

Pixel centres sit at integer coordinates. A centre is covered when every edge
function of the positively oriented triangle is positive there, or zero on an
edge that is a top or left edge. Adjacent triangles that share an edge then
cover each centre on it exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from percor.primitives import ScreenTriangle, edge


@dataclass(frozen=True)
class Span:
    y: int
    x_start: int
    x_end: int

    def __len__(self) -> int:
        return self.x_end - self.x_start + 1

    def pixels(self):
        return [(x, self.y) for x in range(self.x_start, self.x_end + 1)]


def _is_top_left(ax: float, ay: float, bx: float, by: float) -> bool:
    dy = by - ay
    dx = bx - ax
    return dy < 0.0 or (dy == 0.0 and dx > 0.0)


def _edges(tri: ScreenTriangle):
    a, b, c = tri.oriented().vertices
    for p, q in ((a, b), (b, c), (c, a)):
        yield p.x, p.y, q.x, q.y, _is_top_left(p.x, p.y, q.x, q.y)


def _inside(e, x: float, y: float) -> bool:
    ax, ay, bx, by, top_left = e
    w = edge(ax, ay, bx, by, x, y)
    return w > 0.0 or (w == 0.0 and top_left)


def covers(tri: ScreenTriangle, x: float, y: float) -> bool:
    """True when the pixel centre (x, y) belongs to ``tri``."""
    return all(_inside(e, x, y) for e in _edges(tri))


def coverage_test(tri: ScreenTriangle) -> Callable[[float, float], bool]:
    """``covers`` with the edges of ``tri`` set up once."""
    edges = list(_edges(tri))

    def test(x: float, y: float) -> bool:
        return all(_inside(e, x, y) for e in edges)

    return test


def scanline_triangle(tri: ScreenTriangle) -> list[Span]:
    """Covered pixels of ``tri`` as one span per row, top to bottom.

    Row limits come from the edge crossings and are then nudged against the
    point test so spans agree with ``covers`` exactly.
    """
    edges = list(_edges(tri))
    x_min, x_max, y_min, y_max = tri.bounds()
    spans = []
    for y in range(y_min, y_max + 1):
        lo, hi = float(x_min), float(x_max)
        empty = False
        for e in edges:
            ax, ay, bx, by, top_left = e
            dy = by - ay
            if dy == 0.0:
                if not _inside(e, ax, y):
                    empty = True
                continue
            cross = ax + (bx - ax) * (y - ay) / dy
            if dy < 0.0:
                lo = max(lo, cross)
            else:
                hi = min(hi, cross)
        if empty or lo > hi + 1.0:
            continue
        start = max(x_min, math.ceil(lo))
        end = min(x_max, math.floor(hi))
        while start - 1 >= x_min and all(_inside(e, start - 1, y) for e in edges):
            start -= 1
        while start <= end and not all(_inside(e, start, y) for e in edges):
            start += 1
        while end + 1 <= x_max and all(_inside(e, end + 1, y) for e in edges):
            end += 1
        while end >= start and not all(_inside(e, end, y) for e in edges):
            end -= 1
        if start <= end:
            spans.append(Span(y, start, end))
    return spans


def covered_pixels(tri: ScreenTriangle) -> set[tuple[int, int]]:
    return {p for span in scanline_triangle(tri) for p in span.pixels()}
