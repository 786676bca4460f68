"""Polynomial approximations of u along a row and over a triangle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from percor.errors import AnchorOutOfRange, CoincidentNodes, SingularSystem
from percor.ops import tally


@dataclass(frozen=True)
class QuadApproxCoeffs:
    """u(t) = A t^2 + B t + C on the normalized row parameter t in [0, 1]."""

    A: float
    B: float
    C: float
    x_int: float = 0.5
    r: float | None = None
    s: float | None = None
    q: float | None = None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return (self.A * t + self.B) * t + self.C


def quad_fit_normalized(u0: float, u_mid: float, u1: float, printed: bool = False) -> QuadApproxCoeffs:
    """Quadratic through (0, u0), (1/2, u_mid), (1, u1).

    ``printed=True`` uses the published B = -3 u0 + 4 u_mid - 2 u1, which
    misses p(1) = u1; kept only to study the discrepancy.
    """
    a = 2.0 * u0 - 4.0 * u_mid + 2.0 * u1
    b = -3.0 * u0 + 4.0 * u_mid - (2.0 * u1 if printed else u1)
    tally(mul=5, add=4)
    return QuadApproxCoeffs(a, b, u0)


def quad_fit_anchored(x_int: float, u0: float, u_int: float, u1: float) -> QuadApproxCoeffs:
    """Quadratic through (0, u0), (x_int, u_int), (1, u1)."""
    if not 0.0 < x_int < 1.0:
        raise AnchorOutOfRange(f"internal anchor must lie in (0, 1), got {x_int}")
    r = x_int * (u1 - u0)
    s = u0 - u_int
    q = 1.0 / (x_int * x_int - x_int)
    tally(div=1, mul=5, add=5)
    return QuadApproxCoeffs(-q * (r + s), q * (r * x_int + s), u0, x_int, r, s, q)


# Published 4-digit coefficients of (u1, u0, u_int) for A and B at each anchor.
# The 0.3 row prints 1,4297 for A's u1 term; 1.429 (= 10/7) is used here.
ANCHOR_TABLE: dict[float, tuple[tuple[float, float, float], tuple[float, float, float]]] = {
    0.75: ((4.0, 1.333, -5.333), (-3.0, -2.333, 5.333)),
    0.7: ((3.333, 1.429, -4.762), (-2.333, -2.429, 4.762)),
    0.6: ((2.5, 1.667, -4.167), (-1.5, -2.667, 4.167)),
    0.5: ((2.0, 2.0, -4.0), (-1.0, -3.0, 4.0)),
    0.4: ((1.667, 2.5, -4.167), (-0.667, -3.5, 4.167)),
    0.3: ((1.429, 3.333, -4.762), (-0.429, -4.333, 4.762)),
    0.25: ((1.333, 4.0, -5.333), (-0.333, -5.0, 5.333)),
}


def anchor_table_coeffs(x_int: float, u0: float, u_int: float, u1: float) -> tuple[float, float]:
    """(A, B) from the published table row for ``x_int``."""
    (a1, a0, ai), (b1, b0, bi) = ANCHOR_TABLE[x_int]
    return a1 * u1 + a0 * u0 + ai * u_int, b1 * u1 + b0 * u0 + bi * u_int


def recommend_anchor(u0: float, u1: float, near: float = 0.05) -> float:
    """Internal anchor for a row whose u runs from u0 to u1.

    Rows are checked in table order; ``near`` is the closeness threshold for
    "tends to 0" and "tends to 1".
    """
    if u0 <= near:
        return 0.25
    if u1 <= near:
        return 0.75
    if u0 >= 1.0 - near and u1 >= near:
        diff = u0 - u1
        if 0.0 <= diff <= 0.35:
            return 0.5
        if 0.35 < diff <= 0.75:
            return 0.6
        if 0.75 < diff <= 0.95:
            return 0.7
    if u1 >= 1.0 - near and u0 >= near:
        diff = u1 - u0
        if 0.0 <= diff <= 0.35:
            return 0.5
        if 0.35 < diff <= 0.75:
            return 0.4
        if 0.75 < diff <= 0.95:
            return 0.3
    if u0 < 0.5 and u1 < 0.5:
        if u0 < u1:
            return 0.4
        if u0 > u1:
            return 0.6
    return 0.5


@dataclass(frozen=True)
class UnnormalizedQuad:
    """u(x) = A1 x^2 + A2 x + A3 in raw screen x."""

    A1: float
    A2: float
    A3: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (self.A1 * x + self.A2) * x + self.A3


def quad_fit_unnormalized(x0: float, x1: float, x2: float, u0: float, u1: float, u2: float) -> UnnormalizedQuad:
    """Quadratic through three raw-x nodes by Cramer's rule, one division per row."""
    if x0 == x1 or x1 == x2 or x0 == x2:
        raise CoincidentNodes(f"nodes must be distinct, got {x0}, {x1}, {x2}")
    sq0, sq1, sq2 = x0 * x0, x1 * x1, x2 * x2
    d = 1.0 / (sq0 * (x1 - x2) + sq1 * (x2 - x0) + sq2 * (x0 - x1))
    a1 = d * (u0 * (x1 - x2) + u1 * (x2 - x0) + u2 * (x0 - x1))
    a2 = d * (sq0 * (u1 - u2) + sq1 * (u2 - u0) + sq2 * (u0 - u1))
    a3 = d * (sq0 * (x1 * u2 - x2 * u1) + sq1 * (x2 * u0 - x0 * u2) + sq2 * (x0 * u1 - x1 * u0))
    tally(div=1, mul=24, add=20)
    return UnnormalizedQuad(a1, a2, a3)


def quad_fit_cubic(u0: float, u_third: float, u_two_thirds: float, u1: float) -> np.ndarray:
    """Cubic through u at t = 0, 1/3, 2/3, 1; coefficients highest power first."""
    nodes = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
    tally(div=1, mul=16, add=12)
    return np.linalg.solve(np.vander(nodes, 4), np.array([u0, u_third, u_two_thirds, u1]))


class BivariateDegree(StrEnum):
    BIQUADRATIC = "biquadratic"
    BICUBIC = "bicubic"


def _terms(degree: BivariateDegree, x, y) -> list:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    one = np.ones_like(x)
    if degree is BivariateDegree.BIQUADRATIC:
        return [x * x, y * y, x * y, x, y, one]
    return [x**3, y**3, x * x * y, x * y * y, x * x, y * y, x * y, x, y, one]


@dataclass(frozen=True)
class BivariatePoly:
    degree: BivariateDegree
    coeffs: np.ndarray
    points: tuple[tuple[float, float, float], ...]
    frame: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __call__(self, x, y):
        cx, cy, spread = self.frame
        terms = _terms(self.degree, (np.asarray(x, dtype=float) - cx) / spread, (np.asarray(y, dtype=float) - cy) / spread)
        return sum(c * t for c, t in zip(self.coeffs, terms))


def fit_bivariate(points, degree: BivariateDegree | str, centered: bool = False) -> BivariatePoly:
    """Interpolating polynomial in (x, y) through 6 or 10 (x, y, u) samples.

    With ``centered=True`` the basis is taken in coordinates centred on the
    control points and divided by their spread s, which keeps the solve well
    conditioned for pixel-scale input. Coefficients then refer to
    ((x - cx) / s, (y - cy) / s).
    """
    degree = BivariateDegree(degree)
    pts = np.asarray(points, dtype=float)
    need = 6 if degree is BivariateDegree.BIQUADRATIC else 10
    if pts.shape != (need, 3):
        raise ValueError(f"{degree.value} needs {need} (x, y, u) points, got shape {pts.shape}")
    frame = (0.0, 0.0, 1.0)
    if centered:
        cx, cy = float(pts[:, 0].mean()), float(pts[:, 1].mean())
        spread = float(np.abs(pts[:, :2] - (cx, cy)).max()) or 1.0
        frame = (cx, cy, spread)
    system = np.column_stack(_terms(degree, (pts[:, 0] - frame[0]) / frame[2], (pts[:, 1] - frame[1]) / frame[2]))
    if np.linalg.cond(system) > 1e12:
        raise SingularSystem("control points do not determine the polynomial")
    coeffs = np.linalg.solve(system, pts[:, 2])
    return BivariatePoly(degree, coeffs, tuple(map(tuple, pts)), frame)


def triangle_control_points(xy, degree: BivariateDegree | str) -> np.ndarray:
    """Standard interpolation nodes of a triangle.

    biquadratic: vertices and edge midpoints; bicubic: vertices, edge thirds
    and the centroid.
    """
    degree = BivariateDegree(degree)
    p = np.asarray(xy, dtype=float)
    nodes = [p[0], p[1], p[2]]
    edges = ((0, 1), (1, 2), (2, 0))
    if degree is BivariateDegree.BIQUADRATIC:
        nodes += [(p[a] + p[b]) / 2.0 for a, b in edges]
    else:
        for a, b in edges:
            nodes += [p[a] + (p[b] - p[a]) / 3.0, p[a] + 2.0 * (p[b] - p[a]) / 3.0]
        nodes.append(p.mean(axis=0))
    return np.array(nodes)
