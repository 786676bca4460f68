"""Division-free texture stepping with the midpoint method.

For a texture coordinate held on the lattice ``n * du`` two signed functions
are maintained alongside the scan position:

    W = val E - x (2p - du g) - y (2q - du h) - (2r - du i)
    Q = val E - x (2p + du g) - y (2q + du h) - (2r + du i)
    E = 2 (g x + h y + i)

where (p, q, r) is the numerator (a, b, c) for u or (d, e, f) for v.
W >= 0 and Q < 0 hold exactly when val lies in the half-open band
[exact - du/2, exact + du/2). Moving one pixel changes W and Q by constants
plus 2g val (or 2h val); moving val by du changes both by du E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from percor.errors import BehindProjection, NonConvergence
from percor.ops import tally
from percor.texmap.projective import ProjectiveTexMap


def snap_to_lattice(exact, du: float):
    """Lattice index of the half-open band around ``exact``; ties go down."""
    return np.ceil(np.asarray(exact) / du - 0.5)


def _band(p, q, r, m: ProjectiveTexMap, x, y, val, du, e):
    w = val * e - x * (2.0 * p - du * m.g) - y * (2.0 * q - du * m.h) - (2.0 * r - du * m.i)
    qq = val * e - x * (2.0 * p + du * m.g) - y * (2.0 * q + du * m.h) - (2.0 * r + du * m.i)
    return w, qq


@dataclass
class MidpointAxis:
    """Band state of one texture coordinate."""

    n: int
    W: float
    Q: float
    wx: float  # 2p - du g
    qx: float  # 2p + du g
    wy: float  # 2q - du h
    qy: float  # 2q + du h


@dataclass
class MidpointState:
    x: int
    y: int
    du: float
    E: float
    g2: float
    h2: float
    u_axis: MidpointAxis
    v_axis: MidpointAxis
    adjustments: int = 0

    @property
    def u(self) -> float:
        return self.u_axis.n * self.du

    @property
    def v(self) -> float:
        return self.v_axis.n * self.du


def _axis(p, q, r, m, x, y, du, den, e) -> MidpointAxis:
    n = int(math.ceil((p * x + q * y + r) / den / du - 0.5))
    w, qq = _band(p, q, r, m, x, y, n * du, du, e)
    return MidpointAxis(n, w, qq, 2.0 * p - du * m.g, 2.0 * p + du * m.g, 2.0 * q - du * m.h, 2.0 * q + du * m.h)


def midpoint_init(m: ProjectiveTexMap, x0: int, y0: int, du: float = 1.0 / 256) -> MidpointState:
    """Start a midpoint cursor at (x0, y0) with the exact lattice value (two divisions)."""
    if du <= 0.0:
        raise ValueError("du must be positive")
    den = m.g * x0 + m.h * y0 + m.i
    if den <= 0.0:
        raise BehindProjection(f"denominator {den} at ({x0}, {y0})")
    e = 2.0 * den
    tally(div=2, mul=8, add=8)
    state = MidpointState(
        x=x0,
        y=y0,
        du=du,
        E=e,
        g2=2.0 * m.g,
        h2=2.0 * m.h,
        u_axis=_axis(m.a, m.b, m.c, m, x0, y0, du, den, e),
        v_axis=_axis(m.d, m.e, m.f, m, x0, y0, du, den, e),
    )
    _settle(state)
    return state


def _settle(s: MidpointState) -> None:
    limit = math.ceil(1.0 / s.du)
    for axis in (s.u_axis, s.v_axis):
        moved = 0
        step = s.du * s.E
        tally(mul=1, cmp=2)
        while axis.W < 0.0:
            axis.n += 1
            axis.W += step
            axis.Q += step
            moved += 1
            tally(add=2, cmp=1)
            if moved > limit:
                raise NonConvergence(f"more than {limit} lattice adjustments in one step")
        while axis.Q >= 0.0:
            axis.n -= 1
            axis.W -= step
            axis.Q -= step
            moved += 1
            tally(add=2, cmp=1)
            if moved > limit:
                raise NonConvergence(f"more than {limit} lattice adjustments in one step")
        s.adjustments += moved


def midpoint_step_x(s: MidpointState, direction: int = 1) -> MidpointState:
    """Move the cursor one pixel along x and restore the band."""
    for axis in (s.u_axis, s.v_axis):
        t = s.g2 * (axis.n * s.du)
        if direction > 0:
            axis.W += t - axis.wx
            axis.Q += t - axis.qx
        else:
            axis.W -= t - axis.wx
            axis.Q -= t - axis.qx
        tally(mul=2, add=4)
    s.E += s.g2 if direction > 0 else -s.g2
    s.x += 1 if direction > 0 else -1
    tally(add=1)
    _settle(s)
    return s


def midpoint_step_y(s: MidpointState, direction: int = 1) -> MidpointState:
    """Move the cursor one pixel along y and restore the band."""
    for axis in (s.u_axis, s.v_axis):
        t = s.h2 * (axis.n * s.du)
        if direction > 0:
            axis.W += t - axis.wy
            axis.Q += t - axis.qy
        else:
            axis.W -= t - axis.wy
            axis.Q -= t - axis.qy
        tally(mul=2, add=4)
    s.E += s.h2 if direction > 0 else -s.h2
    s.y += 1 if direction > 0 else -1
    tally(add=1)
    _settle(s)
    return s


def midpoint_scan_row(
    m: ProjectiveTexMap, y: int, x_start: int, x_end: int, du: float = 1.0 / 256
) -> tuple[np.ndarray, np.ndarray]:
    """Lattice (u, v) for every pixel of a row, stepping left to right."""
    s = midpoint_init(m, x_start, y, du)
    us = [s.u]
    vs = [s.v]
    for _ in range(x_start, x_end):
        midpoint_step_x(s)
        us.append(s.u)
        vs.append(s.v)
    return np.array(us), np.array(vs)


def midpoint_scan_rows(
    m: ProjectiveTexMap, ys, x_start: int, x_end: int, du: float = 1.0 / 256
) -> tuple[np.ndarray, np.ndarray]:
    """midpoint_scan_row for many rows at once.

    Every row runs the same recurrence in the same operation order as the
    scalar cursor, so the results match it bit for bit. Returns arrays of
    shape (len(ys), x_end - x_start + 1).
    """
    ys = np.asarray(ys, dtype=float)
    rows = ys.size
    x = float(x_start)
    den = m.g * x + m.h * ys + m.i
    if np.any(den <= 0.0):
        raise BehindProjection("denominator not positive at a row start")
    e = 2.0 * den
    g2 = 2.0 * m.g
    width = x_end - x_start + 1
    limit = math.ceil(1.0 / du)
    tally(div=2 * rows, mul=8 * rows, add=8 * rows)

    out = []
    for p, q, r in ((m.a, m.b, m.c), (m.d, m.e, m.f)):
        n = np.ceil((p * x + q * ys + r) / den / du - 0.5)
        w, qq = _band(p, q, r, m, x, ys, n * du, du, e)
        out.append([n, w, qq, 2.0 * p - du * m.g, 2.0 * p + du * m.g])

    result = [np.empty((rows, width)), np.empty((rows, width))]
    e_cur = e.copy()
    for col in range(width):
        if col > 0:
            for axis in out:
                t = g2 * (axis[0] * du)
                axis[1] = axis[1] + (t - axis[3])
                axis[2] = axis[2] + (t - axis[4])
            e_cur = e_cur + g2
            tally(mul=4 * rows, add=9 * rows)
        for k, axis in enumerate(out):
            step = du * e_cur
            for _ in range(2 * limit + 2):
                low = axis[1] < 0.0
                high = axis[2] >= 0.0
                if not (low.any() or high.any()):
                    break
                delta = np.where(low, step, 0.0) - np.where(high, step, 0.0)
                moved = low.astype(float) - high.astype(float)
                axis[0] = axis[0] + moved
                axis[1] = np.where(low | high, axis[1] + delta, axis[1])
                axis[2] = np.where(low | high, axis[2] + delta, axis[2])
                tally(add=2 * int((low | high).sum()))
            else:
                raise NonConvergence(f"more than {limit} lattice adjustments in one step")
            result[k][:, col] = axis[0] * du
    return result[0], result[1]
