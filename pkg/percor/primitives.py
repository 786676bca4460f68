"""Screen-space primitives with per-vertex attributes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from percor.errors import DegenerateTriangle


@dataclass(frozen=True)
class Vertex:
    """A projected vertex: pixel position, world depth and shading attributes."""

    x: float
    y: float
    z: float = 1.0
    color: tuple[float, float, float] = (1.0, 1.0, 1.0)
    normal: tuple[float, float, float] = (0.0, 0.0, 1.0)
    uv: tuple[float, float] = (0.0, 0.0)


def edge(ax: float, ay: float, bx: float, by: float, px, py):
    """Edge function of a->b at p; positive on the inside of a positive-area triangle."""
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax)


@dataclass(frozen=True)
class ScreenTriangle:
    vertices: tuple[Vertex, Vertex, Vertex]

    @classmethod
    def from_points(cls, points, depths=(1.0, 1.0, 1.0), uvs=((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))) -> "ScreenTriangle":
        return cls(tuple(Vertex(float(p[0]), float(p[1]), float(z), uv=tuple(uv)) for p, z, uv in zip(points, depths, uvs)))

    def points(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices], dtype=float)

    def depths(self) -> np.ndarray:
        return np.array([v.z for v in self.vertices], dtype=float)

    def uvs(self) -> np.ndarray:
        return np.array([v.uv for v in self.vertices], dtype=float)

    def area2(self) -> float:
        a, b, c = self.vertices
        return edge(a.x, a.y, b.x, b.y, c.x, c.y)

    def oriented(self) -> "ScreenTriangle":
        """The same triangle with vertices ordered to positive area."""
        area = self.area2()
        if area == 0.0:
            raise DegenerateTriangle(f"zero-area triangle {self.points().tolist()}")
        if area > 0.0:
            return self
        a, b, c = self.vertices
        return ScreenTriangle((a, c, b))

    def bounds(self) -> tuple[int, int, int, int]:
        """Integer pixel-centre bounds (x_min, x_max, y_min, y_max)."""
        p = self.points()
        lo = np.ceil(p.min(axis=0)).astype(int)
        hi = np.floor(p.max(axis=0)).astype(int)
        return int(lo[0]), int(hi[0]), int(lo[1]), int(hi[1])


@dataclass(frozen=True)
class ScreenQuad:
    """Four projected corners in drawing order."""

    vertices: tuple[Vertex, Vertex, Vertex, Vertex]

    def points(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices], dtype=float)

    def uvs(self) -> np.ndarray:
        return np.array([v.uv for v in self.vertices], dtype=float)

    def triangles(self) -> tuple[ScreenTriangle, ScreenTriangle]:
        a, b, c, d = self.vertices
        return ScreenTriangle((a, b, c)), ScreenTriangle((a, c, d))
