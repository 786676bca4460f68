"""The projective screen-to-texture map and its exact and special-case evaluation.

u = (a x + b y + c) / (g x + h y + i)
v = (d x + e y + f) / (g x + h y + i)
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import StrEnum
from itertools import combinations

import numpy as np

from percor.errors import BehindProjection, ClassMismatch, DegenerateQuad, DegenerateTriangle
from percor.ops import tally


@dataclass(frozen=True)
class ProjectiveTexMap:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    h: float
    i: float

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "ProjectiveTexMap":
        return cls(*(float(x) for x in np.asarray(matrix, dtype=float).reshape(9)))

    @classmethod
    def affine(cls, a: float, b: float, c: float, d: float, e: float, f: float) -> "ProjectiveTexMap":
        return cls(a, b, c, d, e, f, 0.0, 0.0, 1.0)

    def coefficients(self) -> tuple[float, ...]:
        return tuple(getattr(self, fld.name) for fld in fields(self))

    def matrix(self) -> np.ndarray:
        return np.array(self.coefficients()).reshape(3, 3)

    def scale(self) -> float:
        return max(abs(x) for x in self.coefficients())

    def scaled(self, factor: float) -> "ProjectiveTexMap":
        return ProjectiveTexMap(*(factor * x for x in self.coefficients()))

    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix()))

    def denominator(self, x, y):
        return self.g * x + self.h * y + self.i

    def normalized(self) -> "ProjectiveTexMap":
        """Scale so that i = 1, or to unit max-norm when i is negligible."""
        if abs(self.i) > 1e-12 * self.scale():
            return self.scaled(1.0 / self.i)
        return self.scaled(1.0 / self.scale())


def _cross(o, p, q) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _check_no_collinear_triple(points: np.ndarray, what: str) -> None:
    extent = float(np.ptp(points, axis=0).max())
    if extent == 0.0:
        raise DegenerateQuad(f"{what} collapse to a point")
    for o, p, q in combinations(points, 3):
        if abs(_cross(o, p, q)) <= 1e-12 * extent * extent:
            raise DegenerateQuad(f"three {what} are collinear")


def derive_from_quad(screen_corners, uv_corners) -> ProjectiveTexMap:
    """Map taking four screen corners to four texture corners.

    Solves the 8-unknown system (with i fixed to 1) in a normalized screen
    frame, then scales so that i = 1 and the denominator is positive at the
    corners.
    """
    xy = np.asarray([(p[0], p[1]) for p in screen_corners], dtype=float)
    uv = np.asarray(uv_corners, dtype=float)
    if xy.shape != (4, 2) or uv.shape != (4, 2):
        raise ValueError("need exactly four screen corners and four uv pairs")
    _check_no_collinear_triple(xy, "screen corners")
    _check_no_collinear_triple(uv, "texture corners")

    centroid = xy.mean(axis=0)
    spread = np.sqrt(((xy - centroid) ** 2).sum(axis=1)).mean()
    k = np.sqrt(2.0) / spread
    to_frame = np.array([[k, 0.0, -k * centroid[0]], [0.0, k, -k * centroid[1]], [0.0, 0.0, 1.0]])
    nx = k * (xy[:, 0] - centroid[0])
    ny = k * (xy[:, 1] - centroid[1])

    rows = []
    rhs = []
    for x, y, (u, v) in zip(nx, ny, uv):
        rows.append([x, y, 1.0, 0.0, 0.0, 0.0, -x * u, -y * u])
        rhs.append(u)
        rows.append([0.0, 0.0, 0.0, x, y, 1.0, -x * v, -y * v])
        rhs.append(v)
    try:
        sol = np.linalg.solve(np.array(rows), np.array(rhs))
        framed = np.append(sol, 1.0).reshape(3, 3)
    except np.linalg.LinAlgError:
        # i = 0 in the normalized frame; take the null vector of the 8x9 system
        full = np.array([r[:6] + [r[6], r[7], -rhs[n]] for n, r in enumerate(rows)])
        framed = np.linalg.svd(full)[2][-1].reshape(3, 3)

    m = ProjectiveTexMap.from_matrix(framed @ to_frame).normalized()
    den = m.denominator(xy[:, 0], xy[:, 1])
    if np.all(den < 0.0):
        m = m.scaled(-1.0)
    elif not np.all(den > 0.0):
        raise DegenerateQuad("quad straddles the vanishing line of its own map")
    return m


def map_from_triangle(xy, depths, uv) -> ProjectiveTexMap:
    """Perspective map of a screen triangle.

    u/z, v/z and 1/z are affine in screen space; the three planes through the
    vertices give the numerators and the denominator.
    """
    xy = np.asarray(xy, dtype=float)
    depths = np.asarray(depths, dtype=float)
    uv = np.asarray(uv, dtype=float)
    system = np.column_stack([xy, np.ones(3)])
    if abs(np.linalg.det(system)) <= 1e-12 * max(1.0, float(np.abs(xy).max())) ** 2:
        raise DegenerateTriangle("screen triangle has zero area")
    inv_z = 1.0 / depths
    num_u = np.linalg.solve(system, uv[:, 0] * inv_z)
    num_v = np.linalg.solve(system, uv[:, 1] * inv_z)
    den = np.linalg.solve(system, inv_z)
    return ProjectiveTexMap.from_matrix(np.vstack([num_u, num_v, den])).normalized()


def exact_uv(m: ProjectiveTexMap, x: float, y: float) -> tuple[float, float]:
    """Exact texture coordinates: six multiplies and two divides."""
    den = m.g * x + m.h * y + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} at ({x}, {y})")
    tally(div=2, mul=6, add=6, cmp=1)
    return (m.a * x + m.b * y + m.c) / den, (m.d * x + m.e * y + m.f) / den


def exact_uv_array(m: ProjectiveTexMap, xs, ys) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized exact_uv over matching arrays of pixel coordinates."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    den = m.g * xs + m.h * ys + m.i
    if np.any(den <= 0.0):
        raise BehindProjection("denominator not positive over the sampled pixels")
    count = den.size
    tally(div=2 * count, mul=6 * count, add=6 * count, cmp=count)
    return (m.a * xs + m.b * ys + m.c) / den, (m.d * xs + m.e * ys + m.f) / den


class MapClass(StrEnum):
    AFFINE = "affine"
    ROW_CONSTANT_V = "row-constant-v"
    COL_CONSTANT_U = "col-constant-u"
    GENERAL = "general"


def _zero(value: float, m: ProjectiveTexMap, tol: float) -> bool:
    return abs(value) <= tol * m.scale()


def classify_map(m: ProjectiveTexMap, tol: float = 1e-9) -> MapClass:
    if _zero(m.g, m, tol) and _zero(m.h, m, tol) and not _zero(m.i, m, tol):
        return MapClass.AFFINE
    if _zero(m.d, m, tol) and _zero(m.g, m, tol):
        return MapClass.ROW_CONSTANT_V
    if _zero(m.b, m, tol) and _zero(m.h, m, tol):
        return MapClass.COL_CONSTANT_U
    return MapClass.GENERAL


def _holds(m: ProjectiveTexMap, cls: MapClass, tol: float) -> bool:
    if cls is MapClass.AFFINE:
        return _zero(m.g, m, tol) and _zero(m.h, m, tol)
    if cls is MapClass.ROW_CONSTANT_V:
        return _zero(m.d, m, tol) and _zero(m.g, m, tol)
    if cls is MapClass.COL_CONSTANT_U:
        return _zero(m.b, m, tol) and _zero(m.h, m, tol)
    return False


def row_uv_specialized(
    m: ProjectiveTexMap, y: float, x_start: int, x_end: int, cls: MapClass | str, tol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """Texture coordinates along a row using the cheapest exact formula for ``cls``.

    RowConstantV: v and B_u = 1/(h y + i) once per row, then u = (a x + A_u) B_u.
    Affine: u = a x + b y + c and v likewise, stepped by one add per pixel.
    """
    cls = MapClass(cls)
    if cls not in (MapClass.AFFINE, MapClass.ROW_CONSTANT_V) or not _holds(m, cls, tol):
        raise ClassMismatch(f"map does not satisfy {cls.value} for row evaluation")
    xs = np.arange(x_start, x_end + 1, dtype=float)
    n = xs.size
    if cls is MapClass.AFFINE:
        u0 = m.a * x_start + m.b * y + m.c
        v0 = m.d * x_start + m.e * y + m.f
        tally(mul=4, add=4 + 2 * max(n - 1, 0))
        steps = xs - x_start
        return u0 + m.a * steps, v0 + m.d * steps
    den = m.h * y + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} on row {y}")
    b_u = 1.0 / den
    a_u = m.b * y + m.c
    v = (m.e * y + m.f) * b_u
    tally(div=1, mul=4, add=3)
    tally(mul=2 * n, add=n)
    return (m.a * xs + a_u) * b_u, np.full(n, v)


def column_uv_specialized(
    m: ProjectiveTexMap, x: float, y_start: int, y_end: int, cls: MapClass | str, tol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """Column counterpart of row_uv_specialized: u is constant down a column for ColConstantU."""
    cls = MapClass(cls)
    if cls not in (MapClass.AFFINE, MapClass.COL_CONSTANT_U) or not _holds(m, cls, tol):
        raise ClassMismatch(f"map does not satisfy {cls.value} for column evaluation")
    ys = np.arange(y_start, y_end + 1, dtype=float)
    n = ys.size
    if cls is MapClass.AFFINE:
        u0 = m.a * x + m.b * y_start + m.c
        v0 = m.d * x + m.e * y_start + m.f
        tally(mul=4, add=4 + 2 * max(n - 1, 0))
        steps = ys - y_start
        return u0 + m.b * steps, v0 + m.e * steps
    den = m.g * x + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} on column {x}")
    b_v = 1.0 / den
    a_v = m.d * x + m.f
    u = (m.a * x + m.c) * b_v
    tally(div=1, mul=4, add=3)
    tally(mul=2 * n, add=n)
    return np.full(n, u), (m.e * ys + a_v) * b_v
