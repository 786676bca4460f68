"""Perspective projection, normalized volume and screen transforms.

Depths are positive distances in front of the observer. The observer sits at
the origin looking down -Z; a world point is written with ``z`` equal to its
distance, so every depth ratio z2/z1 used elsewhere is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from percor.errors import DegenerateViewport, InvalidFrustum, OutsideVolume, PointBehindCamera
from percor.shade import EdgeDepthPair, tw_exact


class WorldPoint(NamedTuple):
    x: float
    y: float
    z: float


class ScreenPoint(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class Frustum:
    """Viewing volume: near-plane window [x_n, x_m] x [y_n, y_m], depth range [z_n, z_m]."""

    x_n: float
    x_m: float
    y_n: float
    y_m: float
    z_n: float
    z_m: float

    def __post_init__(self):
        if not (self.x_n < self.x_m and self.y_n < self.y_m):
            raise InvalidFrustum(f"empty near-plane window: {self}")
        if not (0.0 < self.z_n < self.z_m):
            raise InvalidFrustum(f"need 0 < z_n < z_m, got z_n={self.z_n}, z_m={self.z_m}")

    @classmethod
    def symmetric(cls, half_width: float, half_height: float, z_n: float, z_m: float) -> "Frustum":
        return cls(-half_width, half_width, -half_height, half_height, z_n, z_m)


@dataclass(frozen=True)
class Viewport:
    """Pixel window and depth range of the screen.

    ``sm_vx``/``sm_vy`` default to the window origin; ``sm_vz`` defaults to 0 so
    that zero depth sits on the screen plane.
    """

    x_vn: float
    x_vm: float
    y_vn: float
    y_vm: float
    z_vn: float = 0.0
    z_vm: float = 1.0
    sm_vx: float | None = None
    sm_vy: float | None = None
    sm_vz: float = 0.0

    @property
    def offset_x(self) -> float:
        return self.x_vn if self.sm_vx is None else self.sm_vx

    @property
    def offset_y(self) -> float:
        return self.y_vn if self.sm_vy is None else self.sm_vy

    @property
    def width(self) -> int:
        return int(round(self.x_vm - self.x_vn))

    @property
    def height(self) -> int:
        return int(round(self.y_vm - self.y_vn))


def normalized(p: WorldPoint, f: Frustum, strict: bool = False) -> tuple[float, float, float]:
    """Normalized-volume coordinates of ``p``; the volume maps to [-1, 1]^3."""
    x, y, d = p
    if d <= 0.0:
        raise PointBehindCamera(f"point {tuple(p)} is not in front of the observer")
    width = f.x_m - f.x_n
    height = f.y_m - f.y_n
    depth = f.z_m - f.z_n
    x_norm = 2.0 * f.z_n * x / (width * d) - (f.x_m + f.x_n) / width
    y_norm = 2.0 * f.z_n * y / (height * d) - (f.y_m + f.y_n) / height
    z_norm = (f.z_m + f.z_n) / depth - 2.0 * f.z_m * f.z_n / (depth * d)
    if strict and not (abs(x_norm) <= 1.0 and abs(y_norm) <= 1.0 and f.z_n <= d <= f.z_m):
        raise OutsideVolume(f"point {tuple(p)} lies outside the viewing volume")
    return x_norm, y_norm, z_norm


def project(p: WorldPoint, f: Frustum, v: Viewport, strict: bool = False) -> ScreenPoint:
    """World point to screen pixel coordinates plus screen depth.

    Screen depth grows monotonically with world depth: z_n maps to
    ``sm_vz`` and z_m to ``sm_vz + (z_vm - z_vn)``.
    """
    x_norm, y_norm, z_norm = normalized(p, f, strict=strict)
    return ScreenPoint(
        (x_norm + 1.0) * (v.x_vm - v.x_vn) / 2.0 + v.offset_x,
        (y_norm + 1.0) * (v.y_vm - v.y_vn) / 2.0 + v.offset_y,
        (z_norm + 1.0) * (v.z_vm - v.z_vn) / 2.0 + v.sm_vz,
    )


def unproject(s: ScreenPoint, f: Frustum, v: Viewport) -> WorldPoint:
    """Inverse of ``project`` on its image."""
    width = v.x_vm - v.x_vn
    height = v.y_vm - v.y_vn
    depth_range = v.z_vm - v.z_vn
    if width == 0.0 or height == 0.0 or depth_range == 0.0:
        raise DegenerateViewport(f"viewport has a zero extent: {v}")
    x_norm = 2.0 * (s.x - v.offset_x) / width - 1.0
    y_norm = 2.0 * (s.y - v.offset_y) / height - 1.0
    z_norm = 2.0 * (s.z - v.sm_vz) / depth_range - 1.0

    near, far = f.z_n, f.z_m
    d = 2.0 * far * near / ((far + near) - z_norm * (far - near))
    fw = f.x_m - f.x_n
    fh = f.y_m - f.y_n
    x = (x_norm + (f.x_m + f.x_n) / fw) * fw * d / (2.0 * near)
    y = (y_norm + (f.y_m + f.y_n) / fh) * fh * d / (2.0 * near)
    return WorldPoint(x, y, d)


def projection_matrix(f: Frustum) -> np.ndarray:
    """4x4 matrix taking (x, y, depth, 1) to clip space with w = depth."""
    width = f.x_m - f.x_n
    height = f.y_m - f.y_n
    depth = f.z_m - f.z_n
    return np.array(
        [
            [2.0 * f.z_n / width, 0.0, -(f.x_m + f.x_n) / width, 0.0],
            [0.0, 2.0 * f.z_n / height, -(f.y_m + f.y_n) / height, 0.0],
            [0.0, 0.0, (f.z_m + f.z_n) / depth, -2.0 * f.z_m * f.z_n / depth],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )


def viewport_matrix(v: Viewport) -> np.ndarray:
    """4x4 matrix taking normalized coordinates to screen coordinates."""
    sx = (v.x_vm - v.x_vn) / 2.0
    sy = (v.y_vm - v.y_vn) / 2.0
    sz = (v.z_vm - v.z_vn) / 2.0
    return np.array(
        [
            [sx, 0.0, 0.0, sx + v.offset_x],
            [0.0, sy, 0.0, sy + v.offset_y],
            [0.0, 0.0, sz, sz + v.sm_vz],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def segment_point(a: WorldPoint, b: WorldPoint, t_v: float) -> WorldPoint:
    """World point whose projection lies at screen parameter ``t_v`` of the projected segment a-b."""
    t_w = tw_exact(t_v, EdgeDepthPair(a.z, b.z))
    return WorldPoint(
        a.x + t_w * (b.x - a.x),
        a.y + t_w * (b.y - a.y),
        a.z + t_w * (b.z - a.z),
    )
