"""Rasterize programs into dense boolean voxel grids.

Grids are numpy bool arrays indexed (x, y, z) with y up; voxel i is the
unit cube centered at integer coordinate i. Everything clips silently at
the grid bounds and composes by union, so statement order never matters.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .dsl.ast import (
    Axis,
    DEFAULT_LIMITS,
    DrawStmt,
    ForStmt,
    LoopMode,
    Program,
    ShapeKind,
    expanded_size,
)
from .errors import BudgetError

DEFAULT_DIMS = (32, 32, 32)


def empty_grid(dims=DEFAULT_DIMS) -> np.ndarray:
    return np.zeros(tuple(int(d) for d in dims), dtype=bool)


def _clip(lo, hi, dim):
    return max(lo, 0), min(hi, dim)


def _fill_box(grid, x0, x1, y0, y1, z0, z1):
    dx, dy, dz = grid.shape
    x0, x1 = _clip(x0, x1, dx)
    y0, y1 = _clip(y0, y1, dy)
    z0, z1 = _clip(z0, z1, dz)
    if x0 < x1 and y0 < y1 and z0 < z1:
        grid[x0:x1, y0:y1, z0:z1] = True


def _fill_disk_column(grid, px, py, pz, t, r):
    dx, dy, dz = grid.shape
    y0, y1 = _clip(py, py + t, dy)
    if y0 >= y1:
        return
    x0, x1 = _clip(px - r, px + r + 1, dx)
    z0, z1 = _clip(pz - r, pz + r + 1, dz)
    if x0 >= x1 or z0 >= z1:
        return
    xs = np.arange(x0, x1)
    zs = np.arange(z0, z1)
    mask = (xs[:, None] - px) ** 2 + (zs[None, :] - pz) ** 2 <= r * r
    grid[x0:x1, y0:y1, z0:z1] |= mask[:, None, :]


def _line_points(p0, p1):
    """Integer points from p0 to p1 inclusive, one per longest-axis step."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    steps = int(np.max(np.abs(p1 - p0)))
    if steps == 0:
        return np.rint(p0).astype(int)[None, :]
    ts = np.arange(steps + 1)[:, None] / steps
    return np.rint(p0[None, :] + ts * (p1 - p0)[None, :]).astype(int)


def _render_into(grid: np.ndarray, d: DrawStmt) -> None:
    px, py, pz = d.position
    shape = d.shape
    if shape in (ShapeKind.CYLINDER, ShapeKind.CIRCLE):
        t, r = d.geometry
        _fill_disk_column(grid, px, py, pz, t, r)
    elif shape is ShapeKind.SQUARE:
        t, r = d.geometry
        _fill_box(grid, px - r, px + r + 1, py, py + t, pz - r, pz + r + 1)
    elif shape is ShapeKind.RECTANGLE:
        t, r1, r2 = d.geometry
        _fill_box(grid, px, px + r1, py, py + t, pz, pz + r2)
    elif shape is ShapeKind.CUBOID:
        t, r1, r2 = d.geometry[:3]
        ang = d.geometry[3] if len(d.geometry) == 4 else 0
        if ang == 0:
            _fill_box(grid, px, px + r1, py, py + t, pz, pz + r2)
        else:
            slope = math.tan(math.radians(ang))
            for k in range(t):
                shift = int(np.rint(k * slope))
                _fill_box(grid, px + shift, px + r1 + shift,
                          py + k, py + k + 1, pz, pz + r2)
    else:  # line
        dx, dy, dz = grid.shape
        pts = _line_points(d.position, d.geometry)
        keep = ((pts >= 0) & (pts < np.array([dx, dy, dz]))).all(axis=1)
        pts = pts[keep]
        grid[pts[:, 0], pts[:, 1], pts[:, 2]] = True


def render_draw(d: DrawStmt, dims=DEFAULT_DIMS) -> np.ndarray:
    """Rasterize one primitive; out-of-bounds voxels are dropped."""
    grid = empty_grid(dims)
    _render_into(grid, d)
    return grid


def _rotate_pair(a, b, ca, cb, cos_t, sin_t):
    da, db = a - ca, b - cb
    return (ca + cos_t * da - sin_t * db, cb + sin_t * da + cos_t * db)


def _rotate_point(pt, angle_deg, axis, dims):
    x, y, z = pt
    cx = (dims[0] - 1) / 2
    cy = (dims[1] - 1) / 2
    cz = (dims[2] - 1) / 2
    c = math.cos(math.radians(angle_deg))
    s = math.sin(math.radians(angle_deg))
    if axis is Axis.Y:
        x, z = _rotate_pair(x, z, cx, cz, c, s)
    elif axis is Axis.X:
        y, z = _rotate_pair(y, z, cy, cz, c, s)
    else:
        x, y = _rotate_pair(x, y, cx, cy, c, s)
    return tuple(int(np.rint(v)) for v in (x, y, z))


def _shift_draw(d: DrawStmt, offset) -> DrawStmt:
    pos = tuple(p + o for p, o in zip(d.position, offset))
    geom = d.geometry
    if d.shape is ShapeKind.LINE:
        geom = tuple(g + o for g, o in zip(d.geometry, offset))
    return replace(d, position=pos, geometry=geom)


def _rotate_draw(d: DrawStmt, angle_deg, axis, dims) -> DrawStmt:
    if angle_deg == 0:
        return d
    pos = _rotate_point(d.position, angle_deg, axis, dims)
    geom = d.geometry
    if d.shape is ShapeKind.LINE:
        geom = _rotate_point(d.geometry, angle_deg, axis, dims)
    return replace(d, position=pos, geometry=geom)


def unroll_for(f: ForStmt, dims=DEFAULT_DIMS, limits=DEFAULT_LIMITS) -> list:
    """Expand a loop into plain draws, innermost loops first.

    Iteration k translates by k*u, or rotates the original coordinates by
    k*angle about the grid-center axis (so orbits never accumulate snap
    error). Line endpoints move with their start points.
    """
    if expanded_size(f) > limits.max_expanded:
        raise BudgetError(
            f"loop expands to {expanded_size(f)} draws,"
            f" over the limit of {limits.max_expanded}"
        )
    body: list[DrawStmt] = []
    for s in f.body:
        if isinstance(s, DrawStmt):
            body.append(s)
        else:
            body.extend(unroll_for(s, dims, limits))
    out: list[DrawStmt] = []
    for k in range(f.times):
        if k == 0:
            out.extend(body)
        elif f.mode is LoopMode.TRANSLATION:
            off = tuple(k * u for u in f.step)
            out.extend(_shift_draw(d, off) for d in body)
        else:
            out.extend(_rotate_draw(d, k * f.angle, f.axis, dims) for d in body)
    return out


def execute_block(b, dims=DEFAULT_DIMS) -> np.ndarray:
    """Run one top-level statement to a grid (loops union their draws)."""
    grid = empty_grid(dims)
    if isinstance(b, DrawStmt):
        _render_into(grid, b)
    else:
        for d in unroll_for(b, dims):
            _render_into(grid, d)
    return grid


def execute_program(p: Program, dims=DEFAULT_DIMS) -> np.ndarray:
    """Union of all block grids; the empty program gives the empty grid."""
    grid = empty_grid(dims)
    for b in p.statements:
        grid |= execute_block(b, dims)
    return grid
