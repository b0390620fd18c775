"""Points, segments, loops and regions over two numeric backends.

Exact coordinates are :class:`fractions.Fraction` (plain ``int`` is accepted
and treated as exact); float coordinates are Python ``float``.  A single
operation never mixes the two.  Float predicates treat magnitudes at or below
the global tolerance as zero.
"""
from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import BackendMismatch, DegenerateGeometry
from .exact import SqrtSum

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

_tolerance = float(os.environ.get("POLYRATIO_TOL", "1e-9"))


def get_tolerance() -> float:
    return _tolerance


def set_tolerance(tol: float) -> None:
    global _tolerance
    if not (tol >= 0 and math.isfinite(tol)):
        raise ValueError(f"tolerance must be finite and non-negative, got {tol!r}")
    _tolerance = float(tol)


@contextmanager
def tolerance(tol: float):
    """Temporarily change the float predicate tolerance."""
    old = _tolerance
    set_tolerance(tol)
    try:
        yield
    finally:
        set_tolerance(old)


def backend_of(*values) -> str | None:
    """Backend shared by ``values``; None when only ints are present.

    Raises BackendMismatch on a Fraction/float mix or a non-finite float.
    """
    found = None
    for v in values:
        if isinstance(v, bool):
            raise TypeError("bool is not a coordinate")
        if isinstance(v, float):
            if not math.isfinite(v):
                raise DegenerateGeometry(f"non-finite coordinate {v!r}")
            kind = FLOAT
        elif isinstance(v, (Fraction, int)):
            if isinstance(v, int):
                continue
            kind = EXACT
        else:
            raise TypeError(f"unsupported scalar type {type(v).__name__}")
        if found is None:
            found = kind
        elif found != kind:
            raise BackendMismatch("mixed exact and float coordinates")
    return found


def points_backend(points: Iterable["Point"]) -> str:
    coords = []
    for p in points:
        coords.append(p[0])
        coords.append(p[1])
    return backend_of(*coords) or EXACT


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scaled(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def to_float(self) -> "Point":
        return Point(float(self.x), float(self.y))


def point(x, y) -> Point:
    """Build a validated point; ints are coerced to the other coordinate's backend."""
    kind = backend_of(x, y) or EXACT
    if kind == EXACT:
        return Point(Fraction(x), Fraction(y))
    return Point(float(x), float(y))


def cross(o: Point, a: Point, b: Point):
    """``(a - o) x (b - o)``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(o: Point, a: Point, b: Point):
    """``(a - o) . (b - o)``."""
    return (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1])


def _zero_band(kind: str) -> float:
    return 0.0 if kind == EXACT else _tolerance


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of ``(q - p) x (r - p)``: +1 left turn, -1 right turn, 0 collinear."""
    kind = points_backend((p, q, r))
    c = cross(p, q, r)
    band = _zero_band(kind)
    if c > band:
        return 1
    if c < -band:
        return -1
    return 0


class Segment(NamedTuple):
    a: Point
    b: Point


def segment(a, b) -> Segment:
    a, b = point(*a), point(*b)
    points_backend((a, b))
    if a == b:
        raise DegenerateGeometry("zero-length segment")
    return Segment(a, b)


def _on_segment_collinear(p: Point, s: Segment, band) -> bool:
    # p is already known to be collinear with s
    return (
        min(s.a[0], s.b[0]) - band <= p[0] <= max(s.a[0], s.b[0]) + band
        and min(s.a[1], s.b[1]) - band <= p[1] <= max(s.a[1], s.b[1]) + band
    )


def segment_intersection(s1: Segment, s2: Segment) -> None | Point | Segment:
    """Intersection of two closed segments: None, a Point, or an overlap Segment.

    Endpoints that lie on the other segment are returned verbatim (never
    recomputed), which keeps shared vertices bit-identical in float mode.
    """
    kind = points_backend((s1.a, s1.b, s2.a, s2.b))
    return intersect(s1.a, s1.b, s2.a, s2.b, _zero_band(kind))


def intersect(a0, a1, b0, b1, band):
    """Unchecked core of :func:`segment_intersection` for a known backend."""
    c1 = (b1[0] - b0[0]) * (a0[1] - b0[1]) - (b1[1] - b0[1]) * (a0[0] - b0[0])
    c2 = (b1[0] - b0[0]) * (a1[1] - b0[1]) - (b1[1] - b0[1]) * (a1[0] - b0[0])
    d1 = 1 if c1 > band else (-1 if c1 < -band else 0)
    d2 = 1 if c2 > band else (-1 if c2 < -band else 0)
    if d1 * d2 > 0:
        return None
    c3 = (a1[0] - a0[0]) * (b0[1] - a0[1]) - (a1[1] - a0[1]) * (b0[0] - a0[0])
    c4 = (a1[0] - a0[0]) * (b1[1] - a0[1]) - (a1[1] - a0[1]) * (b1[0] - a0[0])
    d3 = 1 if c3 > band else (-1 if c3 < -band else 0)
    d4 = 1 if c4 > band else (-1 if c4 < -band else 0)
    if d3 * d4 > 0:
        return None
    s1 = Segment(a0, a1)
    s2 = Segment(b0, b1)
    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        return _collinear_overlap(s1, s2, band)
    if d1 == 0 and _on_segment_collinear(a0, s2, band):
        return a0
    if d2 == 0 and _on_segment_collinear(a1, s2, band):
        return a1
    if d3 == 0 and _on_segment_collinear(b0, s1, band):
        return b0
    if d4 == 0 and _on_segment_collinear(b1, s1, band):
        return b1
    if 0 in (d1, d2, d3, d4):
        return None
    return _line_crossing(s1, s2)


def _line_crossing(s1: Segment, s2: Segment) -> Point:
    (x1, y1), (x2, y2) = s1
    (x3, y3), (x4, y4) = s2
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
    return Point(x1 + t * (x2 - x1), y1 + t * (y2 - y1))


def _collinear_overlap(s1: Segment, s2: Segment, band):
    ax = abs(s1.b[0] - s1.a[0]) >= abs(s1.b[1] - s1.a[1])
    key = (lambda p: p[0]) if ax else (lambda p: p[1])
    lo1, hi1 = sorted((s1.a, s1.b), key=key)
    lo2, hi2 = sorted((s2.a, s2.b), key=key)
    lo = lo1 if key(lo1) >= key(lo2) else lo2
    hi = hi1 if key(hi1) <= key(hi2) else hi2
    gap = key(hi) - key(lo)
    if gap < -band:
        return None
    if gap <= band:
        return lo
    return Segment(lo, hi)


def canonicalize(vertices: Sequence[Point], band=None) -> list[Point]:
    """Drop repeated vertices and merge collinear consecutive edges."""
    if band is None:
        band = _zero_band(points_backend(vertices))
    pts = list(vertices)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out: list[Point] = []
        for p in pts:
            if out and _close(out[-1], p, band):
                changed = True
                continue
            out.append(p)
        if len(out) > 1 and _close(out[0], out[-1], band):
            out.pop()
            changed = True
        m = len(out)
        keep = []
        for i in range(m):
            prev, cur, nxt = out[i - 1], out[i], out[(i + 1) % m]
            c = cross(prev, cur, nxt)
            if -band <= c <= band and dot(cur, prev, nxt) <= 0:
                changed = True
                continue
            keep.append(cur)
        pts = keep
    return pts


def _close(p: Point, q: Point, band) -> bool:
    return abs(p[0] - q[0]) <= band and abs(p[1] - q[1]) <= band


@dataclass(frozen=True)
class Loop:
    """Closed polygonal chain; CCW for outer boundaries, CW for holes."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(point(*v) if not isinstance(v, Point) else v for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        points_backend(verts)
        if len(verts) < 3:
            raise DegenerateGeometry("a loop needs at least 3 vertices")
        for i in range(len(verts)):
            if verts[i] == verts[i - 1]:
                raise DegenerateGeometry("repeated consecutive vertex")

    @property
    def backend(self) -> str:
        return points_backend(self.vertices)

    @property
    def orientation(self) -> int:
        a = loop_area(self)
        return (a > 0) - (a < 0)

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def reversed(self) -> "Loop":
        return Loop(self.vertices[::-1])

    def ccw(self) -> "Loop":
        return self if loop_area(self) > 0 else self.reversed()

    def to_float(self) -> "Loop":
        return Loop(tuple(p.to_float() for p in self.vertices))

    def translated(self, dx, dy) -> "Loop":
        return Loop(tuple(Point(p[0] + dx, p[1] + dy) for p in self.vertices))

    def rotated(self, angle: float, about: Point) -> "Loop":
        c, s = math.cos(angle), math.sin(angle)
        ox, oy = float(about[0]), float(about[1])
        return Loop(
            tuple(
                Point(
                    ox + c * (float(p[0]) - ox) - s * (float(p[1]) - oy),
                    oy + s * (float(p[0]) - ox) + c * (float(p[1]) - oy),
                )
                for p in self.vertices
            )
        )

    def centroid(self) -> Point:
        """Vertex average (equals the centre for regular polygons)."""
        n = len(self.vertices)
        return Point(
            sum(p[0] for p in self.vertices) / n, sum(p[1] for p in self.vertices) / n
        )

    def bbox(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def loop_area(loop: Loop):
    """Signed shoelace area, positive for counter-clockwise loops."""
    v = loop.vertices
    n = len(v)
    s = 0
    for i in range(n):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s / 2


def edge_length(a: Point, b: Point):
    """Euclidean length; a SqrtSum for exact coordinates."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if isinstance(dx, float) or isinstance(dy, float):
        return math.hypot(dx, dy)
    return SqrtSum.sqrt(Fraction(dx) ** 2 + Fraction(dy) ** 2)


def loop_perimeter(loop: Loop):
    if loop.backend == EXACT:
        return SqrtSum.of(
            (1, (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2) for a, b in loop.edges()
        )
    return math.fsum(math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in loop.edges())


def is_simple(loop: Loop) -> bool:
    """True when no two non-adjacent edges touch and adjacent ones meet only at their joint."""
    edges = [Segment(a, b) for a, b in loop.edges()]
    m = len(edges)
    for i in range(m):
        for j in range(i + 1, m):
            hit = segment_intersection(edges[i], edges[j])
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            if not adjacent or isinstance(hit, Segment):
                return False
    return True


@dataclass(frozen=True)
class Region:
    """A union's boundary: per component, one CCW outer loop followed by its CW holes."""

    loops: tuple[Loop, ...]

    @property
    def area(self):
        return region_area(self)

    @property
    def perimeter(self):
        return region_perimeter(self)

    @property
    def outers(self) -> list[Loop]:
        return [l for l in self.loops if loop_area(l) > 0]

    @property
    def holes(self) -> list[Loop]:
        return [l for l in self.loops if loop_area(l) < 0]

    @property
    def is_single_chain(self) -> bool:
        return len(self.loops) == 1

    @property
    def vertex_count(self) -> int:
        return sum(len(l.vertices) for l in self.loops)


def region_area(region: Region):
    return sum((loop_area(l) for l in region.loops), 0)


def region_perimeter(region: Region):
    parts = [loop_perimeter(l) for l in region.loops]
    if parts and isinstance(parts[0], SqrtSum):
        return sum(parts, SqrtSum())
    return math.fsum(parts)
