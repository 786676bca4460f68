"""Texture coordinates along a row from a second-order Bezier curve.

On a row y the exact u(x) = (a x + b y + c) / (g x + B) with B = h y + i is a
hyperbola. Its derivative is A / (g x + B)^2 with A = a B - g (b y + c), so the
tangents at the row ends meet at a point p1 that, together with the ends,
spans a quadratic Bezier curve r(t) = (x(t), u(t)) close to the hyperbola.

The curve is parametric in t, not in x, so the pixel grid needs a parameter
per integer x. Two schemes recover it: stepping t and correcting by binary
fractions until x lands on the next integer, or a quadratic t(x) through
three nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from percor.errors import AffineRow, BehindProjection, CoincidentNodes, NonConvergence
from percor.ops import tally
from percor.texmap.projective import ProjectiveTexMap
from percor.texmap.quadratic import UnnormalizedQuad


def _control_point(x0: float, x2: float, f0: float, f2: float, a_row: float, c0: float, c2: float):
    x1 = ((f0 - f2) * c0 * c2 - a_row * (x0 * c2 - x2 * c0)) / (a_row * (c0 - c2))
    tally(div=1, mul=7, add=4)
    return x1


@dataclass
class BezierRow:
    """Control points and row constants of one rasterization line.

    ``A_u``/``A_v`` advance by the polygon constants ``D_u = a h - g b`` and
    ``D_v = d h - g e``, and ``B`` by ``h``, when moving to the next row.
    """

    m: ProjectiveTexMap
    y: float
    x0: float
    x2: float
    A_u: float
    A_v: float
    B: float
    D_u: float
    D_v: float
    xs: tuple[float, float, float] = (0.0, 0.0, 0.0)
    us: tuple[float, float, float] = (0.0, 0.0, 0.0)
    vs: tuple[float, float, float] = (0.0, 0.0, 0.0)
    C0: float = 0.0
    C2: float = 0.0
    t_kor: list[float] = field(default_factory=list)

    @property
    def S_x(self) -> float:
        return self.xs[0] - 2.0 * self.xs[1] + self.xs[2]

    def point(self, t):
        """(x, u, v) on the curve at parameter t (closed form)."""
        t = np.asarray(t, dtype=float)
        w0 = (1.0 - t) ** 2
        w1 = 2.0 * t * (1.0 - t)
        w2 = t * t
        out = tuple(w0 * c[0] + w1 * c[1] + w2 * c[2] for c in (self.xs, self.us, self.vs))
        if np.ndim(t) == 0:
            return tuple(float(v) for v in out)
        return out

    def x_at(self, t: float) -> float:
        tally(mul=3, add=3)
        return (1.0 - t) ** 2 * self.xs[0] + 2.0 * t * (1.0 - t) * self.xs[1] + t * t * self.xs[2]

    def rebuild(self) -> "BezierRow":
        """Recompute the control points from the current row constants."""
        m = self.m
        g, big_b = m.g, self.B
        w0 = g * self.x0 + big_b
        w2 = g * self.x2 + big_b
        if w0 <= 0.0 or w2 <= 0.0:
            raise BehindProjection(f"denominator not positive on row {self.y}")
        c0, c2 = w0 * w0, w2 * w2
        tally(mul=4, add=2)
        num_u0 = m.a * self.x0 + m.b * self.y + m.c
        num_u2 = m.a * self.x2 + m.b * self.y + m.c
        num_v0 = m.d * self.x0 + m.e * self.y + m.f
        num_v2 = m.d * self.x2 + m.e * self.y + m.f
        u0, u2, v0, v2 = num_u0 / w0, num_u2 / w2, num_v0 / w0, num_v2 / w2
        tally(div=4, mul=8, add=8)

        # the tangent intersection abscissa is shared by u and v; take it from
        # the coordinate with the larger slope constant
        if abs(self.A_u) >= abs(self.A_v) and self.A_u != 0.0:
            x1 = _control_point(self.x0, self.x2, u0, u2, self.A_u, c0, c2)
        elif self.A_v != 0.0:
            x1 = _control_point(self.x0, self.x2, v0, v2, self.A_v, c0, c2)
        else:
            x1 = 0.5 * (self.x0 + self.x2)
        u1 = u0 + self.A_u / c0 * (x1 - self.x0)
        v1 = v0 + self.A_v / c0 * (x1 - self.x0)
        tally(div=2, mul=2, add=4)

        self.xs = (self.x0, x1, self.x2)
        self.us = (u0, u1, u2)
        self.vs = (v0, v1, v2)
        self.C0, self.C2 = c0, c2
        self.t_kor = []
        return self

    def advance(self) -> "BezierRow":
        """Move to row y + 1: two additions for A and B per coordinate."""
        self.y += 1
        self.A_u += self.D_u
        self.A_v += self.D_v
        self.B += self.m.h
        tally(add=3)
        return self.rebuild()


def bezier_row(m: ProjectiveTexMap, y: float, x0: float, x2: float, tol: float = 1e-12) -> BezierRow:
    """Bezier approximation of row y between pixels x0 and x2."""
    if abs(m.g) <= tol * m.scale():
        raise AffineRow("g is zero: the end tangents are parallel on every row")
    if x0 == x2:
        raise CoincidentNodes(f"row {y} has a single pixel at x = {x0}")
    if x2 < x0:
        raise ValueError("rows run left to right: need x0 < x2")
    big_b = m.h * y + m.i
    a_u = m.a * big_b - m.g * (m.b * y + m.c)
    a_v = m.d * big_b - m.g * (m.e * y + m.f)
    tally(mul=7, add=5)
    row = BezierRow(
        m=m,
        y=y,
        x0=float(x0),
        x2=float(x2),
        A_u=a_u,
        A_v=a_v,
        B=big_b,
        D_u=m.a * m.h - m.g * m.b,
        D_v=m.d * m.h - m.g * m.e,
    )
    return row.rebuild()


def bezier_eval_fd(row: BezierRow, dt: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x, u, v) at t = 0, dt, 2 dt, ... up to t = 1 by second-order forward differences.

    Each coordinate costs two additions per step: x += delta; delta += d_x
    with the constant d_x = 2 dt^2 S_x.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    steps = int(round(1.0 / dt))
    streams = []
    for c0, c1, c2 in (row.xs, row.us, row.vs):
        s = c0 - 2.0 * c1 + c2
        delta = dt * (2.0 * (c1 - c0) + dt * s)
        dd = 2.0 * dt * dt * s
        tally(mul=5, add=4)
        out = np.empty(steps + 1)
        value = c0
        out[0] = value
        for k in range(1, steps + 1):
            value += delta
            delta += dd
            out[k] = value
        tally(add=2 * steps)
        streams.append(out)
    return streams[0], streams[1], streams[2]


def _bracket(row: BezierRow, t: float, step: float, dt: float, lo: float) -> float:
    while row.x_at(t + step) < lo:
        step += dt
        tally(add=1, cmp=1)
    while step > dt and row.x_at(t + step - dt) >= lo:
        step -= dt
        tally(add=1, cmp=1)
    return step


def bezier_param_iterative(
    row: BezierRow, eps: float = 1e-3, dt0: float | None = None, max_halvings: int = 24
) -> np.ndarray:
    """Parameter t for every integer x from x0 to x2.

    The increment of the previous pixel is reused as the first guess, then
    whole steps of dt bracket the target and signed binary fractions
    dt/2, dt/4, ... (the correction t_kor) refine it until x(t) is within
    ``eps`` of the integer. Each pixel's net correction is appended to
    ``row.t_kor``.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    length = row.x2 - row.x0
    count = int(round(length))
    dt = dt0 if dt0 is not None else 1.0 / (4.0 * abs(length))
    if dt <= 0.0:
        raise ValueError("dt0 must be positive")

    ts = np.empty(count + 1)
    ts[0] = 0.0
    t = 0.0
    step = 0.0
    for i in range(1, count + 1):
        if i == count:
            ts[i] = 1.0
            break
        target = row.x0 + i
        lo, hi = target - eps, target + eps
        step = _bracket(row, t, step, dt, lo)
        correction = 0.0
        term = dt
        n = 0
        x = row.x_at(t + step)
        while not lo <= x <= hi:
            n += 1
            if n > max_halvings:
                raise NonConvergence(f"no t within {eps} of x = {target} after {max_halvings} halvings")
            term *= 0.5
            if x > hi:
                step -= term
                correction += term
            else:
                step += term
                correction -= term
            x = row.x_at(t + step)
            tally(add=2, cmp=2)
        row.t_kor.append(correction)
        t += step
        tally(add=1)
        ts[i] = t
    return ts


def bezier_param_quadratic(x0: float, x1_ctrl: float, x2: float, t1: float = 0.5) -> UnnormalizedQuad:
    """t(x) = A1 x^2 + A2 x + A3 with t(x0) = 0, t(x_mid) = t1, t(x2) = 1.

    x_mid is the curve's abscissa at t1. The constant term uses
    A3 = d (x0^2 (x_mid - x2 t1) - x0 (x_mid^2 - x2^2 t1)); the printed form
    with + x2^2 t1 misses t(x0) = 0.
    """
    x_mid = (1.0 - t1) ** 2 * x0 + 2.0 * t1 * (1.0 - t1) * x1_ctrl + t1 * t1 * x2
    if x0 == x_mid or x_mid == x2 or x0 == x2:
        raise CoincidentNodes(f"nodes must be distinct, got {x0}, {x_mid}, {x2}")
    sq0, sqm, sq2 = x0 * x0, x_mid * x_mid, x2 * x2
    d = 1.0 / (sq0 * (x_mid - x2) + sqm * (x2 - x0) + sq2 * (x0 - x_mid))
    a1 = d * (t1 * (x2 - x0) + x0 - x_mid)
    a2 = d * (t1 * (sq0 - sq2) - sq0 + sqm)
    a3 = d * (sq0 * (x_mid - x2 * t1) - x0 * (sqm - sq2 * t1))
    tally(div=1, mul=18, add=14)
    return UnnormalizedQuad(a1, a2, a3)


def bezier_row_uv(
    m: ProjectiveTexMap,
    y: float,
    x0: int,
    x2: int,
    param: str = "iterative",
    eps: float = 1e-3,
    dt0: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) for pixels x0..x2 of row y from the row's Bezier curve."""
    row = bezier_row(m, y, x0, x2)
    if param == "iterative":
        ts = bezier_param_iterative(row, eps=eps, dt0=dt0)
    elif param == "quadratic":
        fit = bezier_param_quadratic(row.xs[0], row.xs[1], row.xs[2])
        xs = np.arange(x0, x2 + 1, dtype=float)
        ts = np.clip(fit(xs), 0.0, 1.0)
        tally(mul=2 * xs.size, add=2 * xs.size)
    else:
        raise ValueError(f"unknown parameter method {param!r}")
    _, us, vs = row.point(ts)
    tally(mul=6 * ts.size, add=6 * ts.size)
    return np.asarray(us), np.asarray(vs)
