"""Serpentine traversal of a rotated rectangular window.

The base vector (dx, dy) is stepped by a single DDA interpolator. The rows of
the window are copies of that stepped line, each one shifted by the base
line's own step sequence turned a quarter turn: the i-th memorized step
(sx, sy) becomes the row-to-row move (-sy, sx). Rows alternate direction.

The visits sample the rectangle on a rotated lattice of L * n_rows points,
L = max(|dx|, |dy|). For an axis-aligned base vector that lattice is every
cell of the rectangle. Off the axes the lattice is sparser than the pixel
grid by 1 + (dy/dx)^2, so cells lying between two samples are not visited.
"""

from __future__ import annotations

import math

from percor.errors import ZeroVector


def _base_point(j: int, dx: int, dy: int, length: int) -> tuple[int, int]:
    return math.floor(j * dx / length + 0.5), math.floor(j * dy / length + 0.5)


def _turn(p: tuple[int, int]) -> tuple[int, int]:
    return -p[1], p[0]


def _check(dx: int, dy: int, n_rows: int) -> None:
    if dx == 0 and dy == 0:
        raise ZeroVector("base vector of the window is zero")
    if n_rows < 0:
        raise ValueError("n_rows must not be negative")


def serpentine_window(origin: tuple[int, int], base_vector: tuple[int, int], n_rows: int) -> list[tuple[int, int]]:
    """Pixel visit order over the window spanned by ``base_vector`` and ``n_rows`` rows."""
    dx, dy = int(base_vector[0]), int(base_vector[1])
    _check(dx, dy, n_rows)
    length = max(abs(dx), abs(dy))
    line = [_base_point(j, dx, dy, length) for j in range(length)]
    steps = [(line[j + 1][0] - line[j][0], line[j + 1][1] - line[j][1]) for j in range(length - 1)]
    # the DDA repeats with period `length`, so the step into the next period closes the cycle
    steps.append((dx - line[-1][0] + line[0][0], dy - line[-1][1] + line[0][1]))

    visits = []
    ox, oy = origin
    row = [(ox + px, oy + py) for px, py in line]
    for i in range(n_rows):
        visits.extend(row if i % 2 == 0 else reversed(row))
        sx, sy = _turn(steps[i % length])
        row = [(x + sx, y + sy) for x, y in row]
    return visits


def rectangle_cells(
    origin: tuple[int, int], base_vector: tuple[int, int], n_rows: int, rounded: bool = False
) -> set[tuple[int, int]]:
    """Cells of the rotated rectangle, by an integer point-in-rectangle test.

    The rectangle has corner ``origin``, side (L-1)/L * (dx, dy) along the base
    vector and side (n_rows-1)/L * (-dy, dx) across it. ``rounded`` widens it by
    the largest displacement that rounding both lattice coordinates can cause,
    so every serpentine visit falls inside.
    """
    dx, dy = int(base_vector[0]), int(base_vector[1])
    _check(dx, dy, n_rows)
    if n_rows == 0:
        return set()
    length = max(abs(dx), abs(dy))
    norm2 = dx * dx + dy * dy
    margin = (abs(dx) + abs(dy)) * length if rounded else 0
    along_max = (length - 1) * norm2 + margin
    across_max = (n_rows - 1) * norm2 + margin

    along_x, along_y = (length - 1) * dx / length, (length - 1) * dy / length
    across_x, across_y = -(n_rows - 1) * dy / length, (n_rows - 1) * dx / length
    xs = (0.0, along_x, across_x, along_x + across_x)
    ys = (0.0, along_y, across_y, along_y + across_y)
    # rounding moves a lattice point by at most one cell per axis
    x_lo, x_hi = math.floor(min(xs)) - 2, math.ceil(max(xs)) + 2
    y_lo, y_hi = math.floor(min(ys)) - 2, math.ceil(max(ys)) + 2

    ox, oy = origin
    cells = set()
    for cx in range(x_lo, x_hi + 1):
        for cy in range(y_lo, y_hi + 1):
            along = length * (cx * dx + cy * dy)
            across = length * (cy * dx - cx * dy)
            if -margin <= along <= along_max and -margin <= across <= across_max:
                cells.add((ox + cx, oy + cy))
    return cells
