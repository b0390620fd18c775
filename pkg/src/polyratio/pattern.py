"""Pattern-preserving and regular translations of one polygon in a collection."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import GeometryError, NotSimpleChain
from .geom import EXACT, Point, cross, get_tolerance, points_backend
from .shapes import TWO_PI, RegularPolygon
from .union import BOUNDARY, INSIDE, Piece, _Poly, as_loop, locate, union

GENERAL_POSITION = "general-position"
VERTEX_COUNT = "vertex-count"
MEMBERSHIP = "membership"


def is_general_position(polygons: Sequence[Piece]) -> bool:
    """No vertex in the relative interior of another polygon's edge, no overlapping edges.

    Coincident vertices of different polygons are allowed.
    """
    loops = [as_loop(p) for p in polygons]
    kind = points_backend(v for l in loops for v in l.vertices)
    band = 0 if kind == EXACT else get_tolerance()
    for i, A in enumerate(loops):
        for j, B in enumerate(loops):
            if i == j:
                continue
            for v in A.vertices:
                for a, b in B.edges():
                    if v == a or v == b:
                        continue
                    ex, ey = b[0] - a[0], b[1] - a[1]
                    length_sq = ex * ex + ey * ey
                    c = cross(a, b, v)
                    if c * c > band * band * length_sq:
                        continue
                    t = (v[0] - a[0]) * ex + (v[1] - a[1]) * ey
                    if 0 < t < length_sq:
                        return False
    return True


@dataclass(frozen=True)
class BoundarySignature:
    """Cyclic sequence of polygon-index sets, one per union boundary vertex."""

    entries: tuple[frozenset, ...]

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def symmetry_order(self) -> int:
        """Number of cyclic shifts mapping the sequence onto itself up to index relabelling.

        Counted on entry sizes only, which is what rotational symmetry of the
        construction preserves.
        """
        sizes = tuple(len(e) for e in self.entries)
        m = len(sizes)
        return sum(1 for s in range(m) if sizes[s:] + sizes[:s] == sizes)


def canonical_rotation(entries: Sequence[frozenset]) -> tuple[frozenset, ...]:
    """Lexicographically smallest rotation; ties go to the smallest shift."""
    keys = [tuple(sorted(e)) for e in entries]
    m = len(keys)
    best = min(range(m), key=lambda s: (keys[s:] + keys[:s], s)) if m else 0
    return tuple(entries[best:]) + tuple(entries[:best])


def boundary_signature(polygons: Sequence[Piece]) -> BoundarySignature:
    region = union(polygons)
    if not region.is_single_chain:
        raise NotSimpleChain(
            f"union boundary has {len(region.loops)} loops; a single simple chain is required"
        )
    loops = [as_loop(p) for p in polygons]
    kind = points_backend(v for l in loops for v in l.vertices)
    band = 0 if kind == EXACT else get_tolerance()
    prepared = [_Poly(j, l, band) for j, l in enumerate(loops)]
    entries = []
    for v in region.loops[0].vertices:
        entries.append(
            frozenset(j for j, P in enumerate(prepared) if locate(v, P, band)[0] in (INSIDE, BOUNDARY))
        )
    return BoundarySignature(canonical_rotation(entries))


@dataclass(frozen=True)
class PatternReport:
    preserved: bool
    samples_checked: int
    first_failure_t: float | None = None
    failure_kind: str | None = None
    detail: str = ""


def _translate(piece: Piece, dx, dy) -> Piece:
    if isinstance(piece, RegularPolygon):
        return piece.moved(dx, dy)
    return as_loop(piece).translated(dx, dy)


def chebyshev_points(samples: int) -> list[float]:
    return [(1 - math.cos(math.pi * (k + 0.5) / samples)) / 2 for k in range(samples)]


def _state(polygons, i, v, t):
    moved = list(polygons)
    moved[i] = _translate(polygons[i], v[0] * t, v[1] * t)
    if not is_general_position(moved):
        return GENERAL_POSITION, None, "vertex on a foreign edge"
    try:
        sig = boundary_signature(moved)
    except NotSimpleChain as exc:
        return VERTEX_COUNT, None, str(exc)
    except GeometryError as exc:
        return GENERAL_POSITION, None, str(exc)
    return None, sig, ""


def translation_events(polygons: Sequence[Piece], i: int, v) -> list[float]:
    """Parameters t in (0, 1) where a vertex or an edge crossing meets an edge.

    Linear-event model: a moving vertex against a fixed edge, a fixed vertex
    against a moving edge, and a crossing of two fixed edges against a moving
    edge.  Only events where the contact point lies on the segment are kept.
    """
    loops = [as_loop(p).to_float() for p in polygons]
    vx, vy = float(v[0]), float(v[1])
    moving = loops[i]
    fixed_edges = [e for j, l in enumerate(loops) if j != i for e in l.edges()]
    fixed_points = [p for j, l in enumerate(loops) if j != i for p in l.vertices]
    for k, (a, b) in enumerate(fixed_edges):
        for c, d in fixed_edges[k + 1 :]:
            den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
            if den == 0:
                continue
            s = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den
            u = ((c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0])) / den
            if 0 < s < 1 and 0 < u < 1:
                fixed_points.append(Point(a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])))
    events = []

    def on_segment(p, a, b):
        ex, ey = b[0] - a[0], b[1] - a[1]
        t = ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / (ex * ex + ey * ey)
        return -1e-9 <= t <= 1 + 1e-9

    for w in moving.vertices:
        for a, b in fixed_edges:
            rate = (b[0] - a[0]) * vy - (b[1] - a[1]) * vx
            if rate == 0:
                continue
            t = -cross(a, b, w) / rate
            if 0 < t < 1 and on_segment((w[0] + t * vx, w[1] + t * vy), a, b):
                events.append(t)
    for a, b in moving.edges():
        rate = (b[0] - a[0]) * vy - (b[1] - a[1]) * vx
        if rate == 0:
            continue
        for u in fixed_points:
            t = cross(a, b, u) / rate
            if 0 < t < 1:
                a_t = (a[0] + t * vx, a[1] + t * vy)
                b_t = (b[0] + t * vx, b[1] + t * vy)
                if on_segment(u, a_t, b_t):
                    events.append(t)
    events.sort()
    merged: list[float] = []
    for t in events:
        if not merged or t - merged[-1] > 1e-12:
            merged.append(t)
    return merged


def is_pattern_preserving(
    polygons: Sequence[Piece], i: int, v, samples: int = 64, certify: bool = False
) -> PatternReport:
    """Check the translation of polygon ``i`` by ``v`` on sampled t in [0, 1].

    Sampling uses t = 0, t = 1 and ``samples`` Chebyshev-spaced interior
    points; ``certify`` adds every linear event and the midpoints between
    consecutive events.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if v[0] == 0 and v[1] == 0:
        return PatternReport(True, 0)
    polygons = list(polygons)
    ts = {0.0, 1.0, *chebyshev_points(samples)}
    if certify:
        events = translation_events(polygons, i, v)
        ts.update(events)
        grid = [0.0, *events, 1.0]
        ts.update((a + b) / 2 for a, b in zip(grid, grid[1:]))
    ordered = sorted(ts)
    failure, reference, detail = _state(polygons, i, v, 0.0)
    if failure:
        return PatternReport(False, 1, 0.0, failure, detail)
    for n_checked, t in enumerate(ordered[1:], start=2):
        failure, sig, detail = _state(polygons, i, v, t)
        if failure is None:
            if sig.length != reference.length:
                failure, detail = VERTEX_COUNT, f"{sig.length} boundary vertices, expected {reference.length}"
            elif sig != reference:
                failure, detail = MEMBERSHIP, "boundary membership pattern changed"
        if failure:
            return PatternReport(False, n_checked, t, failure, detail)
    return PatternReport(True, len(ordered))


def is_regular_translation(p: RegularPolygon, v, angle_tol: float = 1e-9) -> bool:
    """True when ``v`` points from the centre of ``p`` towards one of its vertices."""
    vx, vy = float(v[0]), float(v[1])
    if vx == 0 and vy == 0:
        raise ValueError("zero translation vector has no direction")
    step = TWO_PI / p.n
    offset = math.fmod(math.atan2(vy, vx) - p.rotation, step)
    if offset < 0:
        offset += step
    return min(offset, step - offset) <= angle_tol
