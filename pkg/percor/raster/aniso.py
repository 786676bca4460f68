"""Pixel footprints in texture space for anisotropic filtering.

The image of a pixel under the map is approximated by a parallelogram whose
sides P1, P2 are the changes of (u, v) for one pixel step in y and in x. On a
constant-depth line the x-side is taken along the line instead, where the
reciprocal denominator R is fixed and the side is the same at every pixel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from percor.errors import BehindProjection, HDegenerate
from percor.image import Image
from percor.texmap.projective import ProjectiveTexMap, exact_uv


@dataclass(frozen=True)
class AnisoFootprint:
    P1: np.ndarray
    P2: np.ndarray

    @property
    def area(self) -> float:
        return float(abs(self.P1[0] * self.P2[1] - self.P1[1] * self.P2[0]))


def _den(m: ProjectiveTexMap, x: float, y: float) -> float:
    den = m.g * x + m.h * y + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} at ({x}, {y})")
    return den


def aniso_jacobian(m: ProjectiveTexMap, x: float, y: float) -> np.ndarray:
    """[[du/dx, du/dy], [dv/dx, dv/dy]] at (x, y)."""
    den = _den(m, x, y)
    nu = m.a * x + m.b * y + m.c
    nv = m.d * x + m.e * y + m.f
    rr = 1.0 / den
    return rr * rr * np.array(
        [
            [m.a * den - m.g * nu, m.b * den - m.h * nu],
            [m.d * den - m.g * nv, m.e * den - m.h * nv],
        ]
    )


def aniso_footprint(m: ProjectiveTexMap, x: float, y: float) -> AnisoFootprint:
    """Forward-difference footprint: P2 one pixel along x, P1 one pixel along y."""
    u0, v0 = exact_uv(m, x, y)
    ux, vx = exact_uv(m, x + 1, y)
    uy, vy = exact_uv(m, x, y + 1)
    return AnisoFootprint(P1=np.array([uy - u0, vy - v0]), P2=np.array([ux - u0, vx - v0]))


def aniso_footprint_constz(m: ProjectiveTexMap, x: float, y: float, tol: float = 1e-12) -> AnisoFootprint:
    """Footprint with P2 along the line of constant denominator through (x, y).

    The direction is (1, k) with k = -g/h, and P2 = R ((a h - g b) / h, (d h - g e) / h)
    depends on the line only through R.
    """
    if abs(m.h) <= tol * m.scale():
        raise HDegenerate("h is zero: constant-denominator lines are vertical")
    rr = 1.0 / _den(m, x, y)
    jac = aniso_jacobian(m, x, y)
    p2 = rr * np.array([(m.a * m.h - m.g * m.b) / m.h, (m.d * m.h - m.g * m.e) / m.h])
    return AnisoFootprint(P1=jac[:, 1].copy(), P2=p2)


def aniso_sample(tex: Image, fp: AnisoFootprint, center_uv, n: int = 4) -> np.ndarray:
    """Box average of n x n nearest-texel samples over center +- P1/2 +- P2/2."""
    if n <= 0:
        raise ValueError("sample count must be positive")
    offsets = (np.arange(n) + 0.5) / n - 0.5
    s, t = np.meshgrid(offsets, offsets, indexing="ij")
    cu, cv = center_uv
    us = cu + s * fp.P1[0] + t * fp.P2[0]
    vs = cv + s * fp.P1[1] + t * fp.P2[1]
    return tex.texel(us.ravel(), vs.ravel()).mean(axis=0)
