"""Perspective-correct parameter remapping for shading.

A segment is drawn on screen with a screen parameter (u, t_v or eta) that runs
linearly between the projected endpoints. Attributes that vary linearly in
the world need the world parameter instead, which is a hyperbolic function
of the screen parameter fixed by the endpoint depths z1, z2 and their ratio
hbar = z2 / z1.

All functions accept numpy arrays as well as floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from percor.errors import InvalidDepth, ParallelNormals

Number = float | np.ndarray


def _out(value: np.ndarray) -> Number:
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class EdgeDepthPair:
    z1: float
    z2: float

    def __post_init__(self):
        if not (self.z1 > 0.0 and self.z2 > 0.0):
            raise InvalidDepth(f"depths must be positive, got z1={self.z1}, z2={self.z2}")

    @property
    def hbar(self) -> float:
        return self.z2 / self.z1

    @classmethod
    def from_ratio(cls, hbar: float) -> "EdgeDepthPair":
        return cls(1.0, hbar)


@dataclass(frozen=True)
class IntensityPair:
    """Endpoint intensities, a float or a tuple of channel values in [0, 1]."""

    i_a: float | tuple[float, ...]
    i_b: float | tuple[float, ...]

    def __post_init__(self):
        for value in (self.i_a, self.i_b):
            arr = np.asarray(value, dtype=float)
            if np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValueError(f"intensity out of [0, 1]: {value}")

    @property
    def delta(self) -> np.ndarray:
        return np.asarray(self.i_b, dtype=float) - np.asarray(self.i_a, dtype=float)


# Gouraud


def gouraud_w(u: Number, d: EdgeDepthPair) -> Number:
    """World parameter w for screen parameter u on a segment with depths z1, z2."""
    u = np.asarray(u, dtype=float)
    return _out(u * d.z1 / (d.z2 - u * (d.z2 - d.z1)))


def perspective_lerp(i_a, i_b, u: Number, d: EdgeDepthPair) -> Number:
    """Perspective-correct interpolation of (possibly multi-channel) endpoint values."""
    i_a = np.asarray(i_a, dtype=float)
    w = np.asarray(gouraud_w(u, d))
    return _out(i_a + np.multiply.outer(w, np.asarray(i_b, dtype=float) - i_a))


def gouraud_error(u: Number, d: EdgeDepthPair, ip: IntensityPair) -> Number:
    """Screen-linear intensity minus perspective-correct intensity."""
    u = np.asarray(u, dtype=float)
    hbar = d.hbar
    factor = u * (1.0 - 1.0 / (hbar + u * (1.0 - hbar)))
    return _out(np.multiply.outer(factor, ip.delta))


def gouraud_error_bound(d: EdgeDepthPair) -> tuple[float, float]:
    """(u_star, max_delta) for a unit intensity difference.

    u_star = (sqrt(hbar) - hbar) / (1 - hbar), written here in the equivalent
    form sqrt(hbar) / (1 + sqrt(hbar)) which has no 0/0 near hbar = 1. For
    hbar = 1 there is no error: (0.5, 0.0).
    """
    hbar = d.hbar
    if hbar == 1.0:
        return 0.5, 0.0
    root = np.sqrt(hbar)
    u_star = float(root / (1.0 + root))
    w_star = u_star / (hbar + u_star * (1.0 - hbar))
    return u_star, float(abs(u_star - w_star))


# World parameter recovery


def tw_exact(t_v: Number, d: EdgeDepthPair) -> Number:
    """t_w = z_A t_v / (z_B - t_v (z_B - z_A)) with z_A = z1, z_B = z2."""
    t_v = np.asarray(t_v, dtype=float)
    return _out(d.z1 * t_v / (d.z2 - t_v * (d.z2 - d.z1)))


def tw_from_ratio(t_v: Number, hbar: float) -> Number:
    """The same map written with the depth ratio only."""
    t_v = np.asarray(t_v, dtype=float)
    return _out(t_v / (hbar - t_v * (hbar - 1.0)))


class TwKind(StrEnum):
    QUADRATIC = "quadratic"
    PIECEWISE = "piecewise"
    CUBIC = "cubic"


@dataclass(frozen=True)
class TwSegment:
    lo: float
    hi: float
    coeffs: tuple[float, ...]  # highest power first, as np.polyval expects


@dataclass(frozen=True)
class TwPolyModel:
    kind: TwKind
    hbar: float
    segments: tuple[TwSegment, ...]

    @property
    def knots(self) -> tuple[float, ...]:
        return tuple(seg.lo for seg in self.segments[1:])

    def __call__(self, t_v: Number) -> Number:
        t_v = np.asarray(t_v, dtype=float)
        out = np.empty_like(t_v)
        # Later segments first so that a shared knot takes the left segment.
        for seg in reversed(self.segments):
            mask = (t_v >= seg.lo) & (t_v <= seg.hi)
            out[mask] = np.polyval(seg.coeffs, t_v[mask])
        return _out(out)


def _quadratic(hbar: float) -> tuple[float, float, float]:
    return 2.0 * (hbar - 1.0) / (hbar + 1.0), (3.0 - hbar) / (hbar + 1.0), 0.0


def _cubic(hbar: float) -> tuple[float, float, float, float]:
    den = (2.0 * hbar + 1.0) * (hbar + 2.0)
    a = 9.0 * (hbar - 1.0) ** 2 / den
    b = -9.0 * (hbar - 1.0) * (hbar - 2.0) / den
    c = (2.0 * hbar**2 - 4.0 * hbar + 11.0) / den
    return a, b, c, 0.0


def _piecewise(hbar: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    # Left half interpolates at 0, 1/4, 1/2; right half at 1/2, 3/4, 1.
    den_left = (hbar + 1.0) * (3.0 * hbar + 1.0)
    left = (8.0 * (hbar - 1.0) / den_left, 2.0 * (hbar + 3.0) / den_left, 0.0)
    den_right = (hbar + 1.0) * (hbar + 3.0)
    right = (
        8.0 * hbar * (hbar - 1.0) / den_right,
        2.0 * hbar * (9.0 - 5.0 * hbar) / den_right,
        3.0 * (hbar - 1.0) ** 2 / den_right,
    )
    return left, right


def _piecewise_printed(hbar: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """The piecewise coefficients exactly as published, typos included.

    Left: a carries the wrong sign and b lacks a factor of 2. Right: the
    denominator uses (3 z_B + z_A) where the interpolation conditions need
    (z_B + 3 z_A). Neither segment satisfies its own endpoint conditions.
    """
    den = (hbar + 1.0) * (3.0 * hbar + 1.0)
    left = (8.0 * (1.0 - hbar) / den, (3.0 + hbar) / den, 0.0)
    right = (
        -8.0 * hbar * (1.0 - hbar) / den,
        2.0 * (9.0 - 5.0 * hbar) * hbar / den,
        3.0 * (1.0 - hbar) ** 2 / den,
    )
    return left, right


def tw_fit(kind: TwKind | str, d: EdgeDepthPair, printed: bool = False) -> TwPolyModel:
    """Polynomial approximation of tw_exact.

    quadratic interpolates at 0, 1/2, 1; piecewise at 0, 1/4, 1/2 and
    1/2, 3/4, 1; cubic at 0, 1/3, 2/3, 1. ``printed=True`` returns the
    published piecewise coefficients for study (quadratic and cubic are
    unaffected).
    """
    kind = TwKind(kind)
    hbar = d.hbar
    if kind is TwKind.QUADRATIC:
        segments = (TwSegment(0.0, 1.0, _quadratic(hbar)),)
    elif kind is TwKind.CUBIC:
        segments = (TwSegment(0.0, 1.0, _cubic(hbar)),)
    else:
        left, right = _piecewise_printed(hbar) if printed else _piecewise(hbar)
        segments = (TwSegment(0.0, 0.5, left), TwSegment(0.5, 1.0, right))
    return TwPolyModel(kind, hbar, segments)


def tw_max_error(
    model: TwPolyModel,
    samples: int = 100_001,
    metric: str = "full-scale",
    t_min: float = 0.5,
) -> float:
    """Largest deviation of ``model`` from tw_exact.

    metric "full-scale": max |model - exact| over [0, 1] (t_w spans a unit
    range, so this is the error relative to full scale).
    metric "relative": max |model - exact| / exact over [t_min, 1].
    metric "pointwise": the same ratio over (0, 1]; near t = 0 it tends to the
    slope mismatch |model'(0) hbar - 1|.
    """
    if metric not in ("full-scale", "relative", "pointwise"):
        raise ValueError(f"unknown metric: {metric}")
    lo = t_min if metric == "relative" else 0.0
    t_v = np.linspace(lo, 1.0, samples)
    if metric == "pointwise":
        t_v = t_v[1:]
    exact = tw_from_ratio(t_v, model.hbar)
    diff = np.abs(model(t_v) - exact)
    if metric == "full-scale":
        return float(diff.max())
    return float((diff / exact).max())


# Normals


def lerp_normal(n_left, n_right, t_w: Number) -> np.ndarray:
    """N_l + t_w (N_r - N_l); not normalized."""
    n_left = np.asarray(n_left, dtype=float)
    n_right = np.asarray(n_right, dtype=float)
    return n_left + np.multiply.outer(np.asarray(t_w, dtype=float), n_right - n_left)


@dataclass(frozen=True)
class NormalFrame:
    """Orthonormal pair spanning the endpoint normals, and the angle between them."""

    n_a: np.ndarray
    n_k: np.ndarray
    psi: float

    def direction(self, angle: Number) -> np.ndarray:
        angle = np.asarray(angle, dtype=float)
        return np.multiply.outer(np.cos(angle), self.n_a) + np.multiply.outer(np.sin(angle), self.n_k)


def make_normal_frame(n_a, n_b) -> NormalFrame:
    n_a = np.asarray(n_a, dtype=float)
    n_b = np.asarray(n_b, dtype=float)
    n_a = n_a / np.linalg.norm(n_a)
    cos_psi = float(np.dot(n_a, n_b))
    if abs(cos_psi) > 1.0 - 1e-9:
        raise ParallelNormals("normals are parallel or antiparallel; nothing to interpolate")
    perp = n_b - cos_psi * n_a
    sin_psi = float(np.linalg.norm(perp))
    return NormalFrame(n_a, perp / sin_psi, float(np.arctan2(sin_psi, cos_psi)))


def _slerp_closed_form(n_a, n_k, psi, eta, hbar):
    cot_psi = 1.0 / np.tan(psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        b = cot_psi + hbar * (1.0 / np.tan(eta * psi) - cot_psi)
    scale = 1.0 / np.sqrt(1.0 + b * b)
    out = (n_a * b[..., None] + n_k) * scale[..., None]
    # eta = 0: the start normal is given
    zero = np.asarray(eta) == 0.0
    if np.any(zero):
        out = np.where(zero[..., None], n_a, out)
    return out


def slerp_perspective(f: NormalFrame, eta: Number, d: EdgeDepthPair) -> np.ndarray:
    """Spherical normal interpolation at screen parameter ``eta``, perspective corrected.

    Returns (n_a b + n_k) / sqrt(1 + b^2) with
    b = cot(psi) + hbar (cot(eta psi) - cot(psi)); unit length by construction.
    """
    eta_arr = np.atleast_1d(np.asarray(eta, dtype=float))
    out = _slerp_closed_form(f.n_a, f.n_k, f.psi, eta_arr, d.hbar)
    return out[0] if np.ndim(eta) == 0 else out


def slerp_perspective_batch(n_a, n_b, eta, hbar) -> np.ndarray:
    """Row-wise slerp_perspective for stacks of endpoint normals."""
    n_a = np.asarray(n_a, dtype=float)
    n_b = np.asarray(n_b, dtype=float)
    n_a = n_a / np.linalg.norm(n_a, axis=1, keepdims=True)
    cos_psi = np.einsum("ij,ij->i", n_a, n_b)
    if np.any(np.abs(cos_psi) > 1.0 - 1e-9):
        raise ParallelNormals("batch contains parallel or antiparallel normals")
    perp = n_b - cos_psi[:, None] * n_a
    sin_psi = np.linalg.norm(perp, axis=1)
    n_k = perp / sin_psi[:, None]
    psi = np.arctan2(sin_psi, cos_psi)
    return _slerp_closed_form(n_a, n_k, psi, np.asarray(eta, dtype=float), np.asarray(hbar, dtype=float))


def chord_parameter(f: NormalFrame, eta: Number) -> Number:
    """Screen chord parameter v whose chord point N_a + v (N_b - N_a) points at angle eta psi."""
    eta = np.asarray(eta, dtype=float)
    return _out(1.0 / (1.0 + np.sin(f.psi) / np.tan(eta * f.psi) - np.cos(f.psi)))
