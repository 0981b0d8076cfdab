"""Phase-portrait data: vector-field samples and nullclines for 2-variable
models (or 2 free variables of a larger model with the rest frozen).

Nullclines are the zero-level contours of each derivative component,
extracted per grid cell by bilinear sign crossings and chained into
polylines; rendering is left to external tools.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PhasePortrait", "phase_portrait", "nullcline_intersections"]


@dataclass
class PhasePortrait:
    x_var: str
    y_var: str
    x_grid: np.ndarray
    y_grid: np.ndarray
    u: np.ndarray  # d(x_var)/dt over the grid, shape (ny, nx)
    v: np.ndarray
    x_nullclines: list  # polylines (arrays of shape (k, 2)) where u = 0
    y_nullclines: list  # polylines where v = 0


def _cell_crossings(f, xs, ys, i, j):
    """Zero crossings of field f on the edges of cell (i, j) -> list of points."""
    corners = [
        (xs[j], ys[i], f[i, j]),
        (xs[j + 1], ys[i], f[i, j + 1]),
        (xs[j + 1], ys[i + 1], f[i + 1, j + 1]),
        (xs[j], ys[i + 1], f[i + 1, j]),
    ]
    pts = []
    for k in range(4):
        x1, y1, f1 = corners[k]
        x2, y2, f2 = corners[(k + 1) % 4]
        if f1 == 0.0 and f2 == 0.0:
            continue
        if f1 == 0.0:
            pts.append((x1, y1))
        elif (f1 < 0) != (f2 < 0):
            t = f1 / (f1 - f2)
            pts.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
    # dedupe near-identical corner hits
    uniq = []
    for p in pts:
        if not any(abs(p[0] - q[0]) < 1e-12 and abs(p[1] - q[1]) < 1e-12 for q in uniq):
            uniq.append(p)
    return uniq


def _contour_segments(f, xs, ys):
    segs = []
    ny, nx = f.shape
    for i in range(ny - 1):
        for j in range(nx - 1):
            pts = _cell_crossings(f, xs, ys, i, j)
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            elif len(pts) == 4:
                # ambiguous saddle cell: pair by the sign of the center value
                segs.append((pts[0], pts[1]))
                segs.append((pts[2], pts[3]))
    return segs


def _chain_polylines(segs):
    def key(p):
        return (round(p[0], 9), round(p[1], 9))

    adj = {}
    for a, b in segs:
        adj.setdefault(key(a), []).append((a, b))
        adj.setdefault(key(b), []).append((b, a))
    used = set()
    polylines = []
    for idx, (a, b) in enumerate(segs):
        if idx in used:
            continue
        # walk both directions from this segment
        chain = [a, b]
        used.add(idx)
        grew = True
        while grew:
            grew = False
            for endpoint, append in ((chain[-1], True), (chain[0], False)):
                for sidx, (c, d) in enumerate(segs):
                    if sidx in used:
                        continue
                    if key(c) == key(endpoint):
                        nxt = d
                    elif key(d) == key(endpoint):
                        nxt = c
                    else:
                        continue
                    if append:
                        chain.append(nxt)
                    else:
                        chain.insert(0, nxt)
                    used.add(sidx)
                    grew = True
                    break
                if grew:
                    break
        polylines.append(np.array(chain))
    return polylines


def phase_portrait(
    model,
    x_range,
    y_range,
    nx=40,
    ny=40,
    x_var=None,
    y_var=None,
    frozen=None,
):
    """Vector field and nullclines over a rectangular grid.

    For models with more than 2 variables, every other variable must get a
    frozen value via `frozen` (a {variable: value} mapping).
    """
    if nx < 2 or ny < 2:
        raise ValueError("grid must be at least 2x2")
    if x_range[0] >= x_range[1] or y_range[0] >= y_range[1]:
        raise ValueError("degenerate grid range")
    names = list(model.variables)
    frozen = dict(frozen or {})
    free = [v for v in names if v not in frozen]
    x_var = x_var or free[0]
    y_var = y_var or free[1]
    remaining = [v for v in names if v not in (x_var, y_var) and v not in frozen]
    if remaining:
        raise ValueError(f"variables {remaining} need frozen values for a 2-D portrait")
    xi, yi = model.index_of(x_var), model.index_of(y_var)
    base = np.zeros(model.dim)
    for name, value in frozen.items():
        base[model.index_of(name)] = value
    xs = np.linspace(x_range[0], x_range[1], nx)
    ys = np.linspace(y_range[0], y_range[1], ny)
    u = np.empty((ny, nx))
    v = np.empty((ny, nx))
    for i, yv in enumerate(ys):
        for j, xv in enumerate(xs):
            state = base.copy()
            state[xi] = xv
            state[yi] = yv
            deriv = model.rhs(state)
            u[i, j] = deriv[xi]
            v[i, j] = deriv[yi]
    return PhasePortrait(
        x_var=x_var,
        y_var=y_var,
        x_grid=xs,
        y_grid=ys,
        u=u,
        v=v,
        x_nullclines=_chain_polylines(_contour_segments(u, xs, ys)),
        y_nullclines=_chain_polylines(_contour_segments(v, xs, ys)),
    )


def _seg_intersection(p1, p2, p3, p4):
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-15:
        return None
    t = ((p3[0] - p1[0]) * d2[1] - (p3[1] - p1[1]) * d2[0]) / denom
    s = ((p3[0] - p1[0]) * d1[1] - (p3[1] - p1[1]) * d1[0]) / denom
    if -1e-9 <= t <= 1 + 1e-9 and -1e-9 <= s <= 1 + 1e-9:
        return (p1[0] + t * d1[0], p1[1] + t * d1[1])
    return None


def nullcline_intersections(portrait, dedupe_tol=None):
    """Intersection points of the two nullcline families (fixed-point estimates)."""
    if dedupe_tol is None:
        dedupe_tol = 2.0 * max(
            portrait.x_grid[1] - portrait.x_grid[0],
            portrait.y_grid[1] - portrait.y_grid[0],
        )
    points = []
    for poly_u in portrait.x_nullclines:
        for poly_v in portrait.y_nullclines:
            for i in range(len(poly_u) - 1):
                for j in range(len(poly_v) - 1):
                    p = _seg_intersection(
                        poly_u[i], poly_u[i + 1], poly_v[j], poly_v[j + 1]
                    )
                    if p is None:
                        continue
                    if not any(
                        abs(p[0] - q[0]) < dedupe_tol and abs(p[1] - q[1]) < dedupe_tol
                        for q in points
                    ):
                        points.append(p)
    return points
