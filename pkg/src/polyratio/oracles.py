"""Independent cross-checks for the union engine.

``perimeter_oracle`` never builds the union: it clips each input edge
against the other (convex) polygons and measures what is left on a 1-D
parameter line.  ``area_oracle`` is plain Monte Carlo over the bounding box.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import SqrtSum
from .geom import EXACT, get_tolerance, points_backend
from .union import Piece, as_loop


def _covered_intervals(a, b, poly, own_index, other_index, band):
    """Parameter sub-intervals of edge a->b not on the union boundary because of ``poly``."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    verts = poly.vertices
    m = len(verts)
    lo, hi = 0, 1
    on_line = None
    for k in range(m):
        p, q = verts[k], verts[(k + 1) % m]
        ex, ey = q[0] - p[0], q[1] - p[1]
        # inside test for a + t*d: c0 + c1*t > 0
        c0 = ex * (a[1] - p[1]) - ey * (a[0] - p[0])
        c1 = ex * dy - ey * dx
        scale = math.hypot(float(ex), float(ey)) if band else 1
        if abs(c1) <= band * scale and abs(c0) <= band * scale:
            on_line = (ex, ey)
            continue
        if abs(c1) <= band * scale:
            if c0 < 0:
                return []
            continue
        t = -c0 / c1
        if c1 > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if hi <= lo:
        return []
    if on_line is None:
        return [(lo, hi)]
    same = on_line[0] * dx + on_line[1] * dy > 0
    if same and own_index < other_index:
        return []
    return [(lo, hi)]


def _measure(intervals) -> object:
    total = 0
    end = None
    for lo, hi in sorted(intervals):
        if end is None or lo > end:
            total += hi - lo
            end = hi
        elif hi > end:
            total += hi - end
            end = hi
    return total


def perimeter_oracle(polygons: Sequence[Piece]):
    """Total length of input edges not hidden inside (or doubled on) other polygons."""
    loops = [as_loop(p) for p in polygons]
    kind = points_backend(v for l in loops for v in l.vertices)
    exact = kind == EXACT
    band = 0 if exact else get_tolerance()
    terms = []
    for i, li in enumerate(loops):
        for a, b in li.edges():
            covered = []
            for j, lj in enumerate(loops):
                if j != i:
                    covered.extend(_covered_intervals(a, b, lj, i, j, band))
            visible = 1 - _measure(covered)
            if exact:
                terms.append((Fraction(visible), (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2))
            else:
                terms.append(visible * math.hypot(b[0] - a[0], b[1] - a[1]))
    if exact:
        return SqrtSum.of(terms)
    return math.fsum(terms)


def _inside_any(xy: np.ndarray, loops) -> np.ndarray:
    hit = np.zeros(len(xy), dtype=bool)
    for loop in loops:
        v = np.array([[float(p[0]), float(p[1])] for p in loop.vertices])
        inside = np.ones(len(xy), dtype=bool)
        w = np.roll(v, -1, axis=0)
        for (px, py), (qx, qy) in zip(v, w):
            inside &= (qx - px) * (xy[:, 1] - py) - (qy - py) * (xy[:, 0] - px) >= 0
        hit |= inside
    return hit


def area_oracle(polygons: Sequence[Piece], samples: int = 1_000_000, seed: int = 0):
    """Monte Carlo estimate of the union area and its standard error."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    loops = [as_loop(p) for p in polygons]
    xs = [float(p[0]) for l in loops for p in l.vertices]
    ys = [float(p[1]) for l in loops for p in l.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    box = (x1 - x0) * (y1 - y0)
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    chunk = 200_000
    while done < samples:
        m = min(chunk, samples - done)
        xy = np.column_stack((rng.uniform(x0, x1, m), rng.uniform(y0, y1, m)))
        hits += int(_inside_any(xy, loops).sum())
        done += m
    frac = hits / samples
    estimate = box * frac
    stderr = box * math.sqrt(max(frac * (1 - frac), 0.0) / samples)
    return estimate, stderr


def random_instance(rng: np.random.Generator, min_k: int = 2, max_k: int = 6, spread: float = 0.8):
    """A few unit regular polygons (3 to 8 sides) with random centres and rotations."""
    from .shapes import RegularPolygon

    k = int(rng.integers(min_k, max_k + 1))
    out = []
    for _ in range(k):
        n = int(rng.integers(3, 9))
        cx, cy = rng.uniform(-spread, spread, 2)
        out.append(RegularPolygon(n, 1.0, (float(cx), float(cy)), float(rng.uniform(0, 2 * math.pi))))
    return out


def oracle_comparison(count: int = 200, seed: int = 0, samples: int = 1_000_000) -> list[dict]:
    """Union perimeter/area against both oracles on ``count`` seeded random instances."""
    from .geom import region_area, region_perimeter
    from .union import union

    rng = np.random.default_rng(seed)
    rows = []
    for idx in range(count):
        polys = random_instance(rng)
        region = union(polys)
        p, a = float(region_perimeter(region)), float(region_area(region))
        p_oracle = float(perimeter_oracle(polys))
        a_mc, se = area_oracle(polys, samples, seed=seed * 100_003 + idx)
        rows.append(
            {
                "index": idx,
                "k": len(polys),
                "perimeter": p,
                "perimeter_oracle": p_oracle,
                "perimeter_error": abs(p - p_oracle),
                "area": a,
                "area_mc": a_mc,
                "area_stderr": se,
                "area_z": abs(a - a_mc) / se if se > 0 else 0.0,
            }
        )
    return rows
