"""Boolean union of convex polygons by full segment arrangement.

Every input edge is split at all intersection points with edges of the other
polygons.  A sub-edge survives when its midpoint is outside every other
polygon; sub-edges lying on another polygon's boundary are kept once if the
two interiors are on the same side and dropped if they face each other.  The
surviving directed sub-edges are stitched into loops by turning as sharply
clockwise as possible at each vertex, which yields simple loops even at
pinch points.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DegenerateGeometry, GeneralPositionViolation, GeometryError, ToleranceAmbiguity
from .geom import (
    EXACT,
    Loop,
    Point,
    Region,
    Segment,
    canonicalize,
    cross,
    get_tolerance,
    loop_area,
    points_backend,
    region_area,
    region_perimeter,
    intersect,
)
from .shapes import RegularPolygon, polygon_vertices

Piece = Union[RegularPolygon, Loop]

INSIDE, OUTSIDE, BOUNDARY = "inside", "outside", "boundary"


def as_loop(piece: Piece) -> Loop:
    if isinstance(piece, RegularPolygon):
        return polygon_vertices(piece)
    if isinstance(piece, Loop):
        return piece.ccw()
    return Loop(tuple(piece)).ccw()


class _Poly:
    __slots__ = ("index", "loop", "verts", "edges", "edge_boxes", "lines", "bbox", "convex")

    def __init__(self, index: int, loop: Loop, band):
        self.index = index
        self.loop = loop
        self.verts = loop.vertices
        n = len(self.verts)
        self.edges = [(self.verts[k], self.verts[(k + 1) % n]) for k in range(n)]
        self.edge_boxes = [
            (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1])) for a, b in self.edges
        ]
        # cross(a, b, p) == u*px + v*py + w
        self.lines = [
            (a[1] - b[1], b[0] - a[0], (b[1] - a[1]) * a[0] - (b[0] - a[0]) * a[1])
            for a, b in self.edges
        ]
        self.bbox = loop.bbox()
        self.convex = all(
            cross(self.verts[k - 1], self.verts[k], self.verts[(k + 1) % n]) >= -band
            for k in range(n)
        )


def _bbox_overlap(b1, b2, band) -> bool:
    return not (
        b1[2] < b2[0] - band or b2[2] < b1[0] - band or b1[3] < b2[1] - band or b2[3] < b1[1] - band
    )


def _in_bbox(p, b, band) -> bool:
    return b[0] - band <= p[0] <= b[2] + band and b[1] - band <= p[1] <= b[3] + band


class _Registry:
    """Canonical vertex store; float points closer than the tolerance are merged."""

    def __init__(self, kind: str, band):
        self.exact = kind == EXACT or band == 0
        self.band = band
        self.cell = 4 * band if not self.exact else None
        self.table: dict = {}

    def get(self, p: Point) -> Point:
        if self.exact:
            return self.table.setdefault(p, p)
        cx, cy = math.floor(p[0] / self.cell), math.floor(p[1] / self.cell)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q in self.table.get((cx + dx, cy + dy), ()):
                    if abs(q[0] - p[0]) <= self.band and abs(q[1] - p[1]) <= self.band:
                        return q
        self.table.setdefault((cx, cy), []).append(p)
        return p


def _exactly_on_line(a: Point, b: Point, v: Point) -> bool:
    fa = [Fraction(c) for c in (*a, *b, *v)]
    return (fa[2] - fa[0]) * (fa[5] - fa[1]) - (fa[3] - fa[1]) * (fa[4] - fa[0]) == 0


def _scan_degeneracies(polys: Sequence[_Poly], kind: str, band, strict: bool) -> None:
    """Reject vertex-on-foreign-edge configurations that cannot be resolved safely."""
    exact = kind == EXACT
    for A in polys:
        for B in polys:
            if A is B or not _bbox_overlap(A.bbox, B.bbox, band):
                continue
            for v in A.verts:
                if not _in_bbox(v, B.bbox, band):
                    continue
                for a, b in B.edges:
                    ex, ey = b[0] - a[0], b[1] - a[1]
                    length_sq = ex * ex + ey * ey
                    c = cross(a, b, v)
                    if exact:
                        if c != 0:
                            continue
                    elif c * c > band * band * length_sq:
                        continue
                    t = (v[0] - a[0]) * ex + (v[1] - a[1]) * ey
                    slack = 0 if exact else band * math.sqrt(length_sq)
                    if t < -slack or t > length_sq + slack:
                        continue
                    near_a = abs(v[0] - a[0]) <= band and abs(v[1] - a[1]) <= band
                    near_b = abs(v[0] - b[0]) <= band and abs(v[1] - b[1]) <= band
                    if near_a or near_b:
                        # coincident vertices; near-coincident ones are merged by the registry
                        continue
                    if strict:
                        err = GeneralPositionViolation if exact else ToleranceAmbiguity
                        raise err(
                            f"vertex {tuple(v)} of polygon {A.index} lies on an edge of "
                            f"polygon {B.index}"
                        )
                    if not exact and not _exactly_on_line(a, b, v):
                        raise ToleranceAmbiguity(
                            f"vertex {tuple(v)} of polygon {A.index} is within tolerance of "
                            f"an edge of polygon {B.index}"
                        )


def locate(p: Point, poly: _Poly, band):
    """Classify ``p`` against a polygon: (INSIDE|OUTSIDE|BOUNDARY, edge index or None)."""
    if poly.convex:
        on = None
        px, py = p[0], p[1]
        for k, (u, v, w) in enumerate(poly.lines):
            c = u * px + v * py + w
            if c < -band:
                return OUTSIDE, None
            if c <= band and on is None:
                on = k
        if on is not None:
            return BOUNDARY, on
        return INSIDE, None
    winding = 0
    for k, (a, b) in enumerate(poly.edges):
        c = cross(a, b, p)
        if (
            -band <= c <= band
            and min(a[0], b[0]) - band <= p[0] <= max(a[0], b[0]) + band
            and min(a[1], b[1]) - band <= p[1] <= max(a[1], b[1]) + band
        ):
            return BOUNDARY, k
        if a[1] <= p[1]:
            if b[1] > p[1] and c > 0:
                winding += 1
        elif b[1] <= p[1] and c < 0:
            winding -= 1
    return (INSIDE if winding != 0 else OUTSIDE), None


def _diamond(dx, dy):
    """Monotone stand-in for atan2 on [0, 4); exact for rational input."""
    if dy >= 0:
        return dy / (dx + dy) if dx >= 0 else 1 + (-dx) / (-dx + dy)
    return 2 + (-dy) / (-dx - dy) if dx < 0 else 3 + dx / (dx - dy)


def _ccw_from(ref, d):
    """Pseudo-angle of direction ``d`` measured counter-clockwise from ``ref``."""
    x = ref[0] * d[0] + ref[1] * d[1]
    y = ref[0] * d[1] - ref[1] * d[0]
    if x == 0 and y == 0:
        return 0
    return _diamond(x, y)


def _split_edges(polys: Sequence[_Poly], registry: _Registry, band, strict: bool, exact: bool):
    hits: dict[tuple[int, int], list[Point]] = {}
    for A in polys:
        for k, (a, b) in enumerate(A.edges):
            hits[(A.index, k)] = [registry.get(a), registry.get(b)]
    crossings: dict[Point, set] = {}
    for ia, A in enumerate(polys):
        for B in polys[ia + 1 :]:
            if not _bbox_overlap(A.bbox, B.bbox, band):
                continue
            for ka, (a0, a1) in enumerate(A.edges):
                ba = A.edge_boxes[ka]
                if not _bbox_overlap(ba, B.bbox, band):
                    continue
                for kb, (b0, b1) in enumerate(B.edges):
                    bb = B.edge_boxes[kb]
                    if (
                        ba[2] < bb[0] - band
                        or bb[2] < ba[0] - band
                        or ba[3] < bb[1] - band
                        or bb[3] < ba[1] - band
                    ):
                        continue
                    hit = intersect(a0, a1, b0, b1, band)
                    if hit is None:
                        continue
                    if isinstance(hit, Segment):
                        if strict:
                            raise (GeneralPositionViolation if exact else ToleranceAmbiguity)(
                                f"edges of polygons {A.index} and {B.index} overlap"
                            )
                        pts = [registry.get(hit.a), registry.get(hit.b)]
                    else:
                        pts = [registry.get(hit)]
                    for p in pts:
                        hits[(A.index, ka)].append(p)
                        hits[(B.index, kb)].append(p)
                        if strict:
                            crossings.setdefault(p, set()).update(
                                {(A.index, ka), (B.index, kb)}
                            )
    if strict:
        for p, owners in crossings.items():
            through = [o for o in owners if p not in polys[o[0]].edges[o[1]]]
            if len(through) >= 3:
                raise (GeneralPositionViolation if exact else ToleranceAmbiguity)(
                    f"three or more edges meet at {tuple(p)}"
                )
    return hits


def _sub_edges(a: Point, b: Point, pts: Iterable[Point]):
    ex, ey = b[0] - a[0], b[1] - a[1]
    ordered = sorted(set(pts), key=lambda p: (p[0] - a[0]) * ex + (p[1] - a[1]) * ey)
    return [(ordered[i], ordered[i + 1]) for i in range(len(ordered) - 1)]


def union(polygons: Sequence[Piece], *, strict: bool = False) -> Region:
    """Union of convex CCW polygons (RegularPolygon or Loop) as a Region.

    With ``strict=True`` any vertex on a foreign edge, overlapping edges or a
    concurrence of three edges raises GeneralPositionViolation (exact input)
    or ToleranceAmbiguity (float input).  Otherwise exact degeneracies are
    resolved; in float mode a vertex within tolerance of a foreign edge that
    is not exactly on it raises ToleranceAmbiguity.
    """
    loops = [as_loop(p) for p in polygons]
    if not loops:
        raise DegenerateGeometry("union of no polygons")
    kind = points_backend(v for l in loops for v in l.vertices)
    exact = kind == EXACT
    band = 0 if exact else get_tolerance()
    polys = [_Poly(i, l, band) for i, l in enumerate(loops)]
    _scan_degeneracies(polys, kind, band, strict)
    registry = _Registry(kind, band)
    hits = _split_edges(polys, registry, band, strict, exact)

    kept: list[tuple[Point, Point]] = []
    for A in polys:
        for k, (a, b) in enumerate(A.edges):
            for p, q in _sub_edges(a, b, hits[(A.index, k)]):
                if p == q:
                    continue
                mid = Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
                keep = True
                for B in polys:
                    if B is A or not _in_bbox(mid, B.bbox, band):
                        continue
                    where, edge = locate(mid, B, band)
                    if where == INSIDE:
                        keep = False
                    elif where == BOUNDARY:
                        b0, b1 = B.edges[edge]
                        same = (q[0] - p[0]) * (b1[0] - b0[0]) + (q[1] - p[1]) * (b1[1] - b0[1]) > 0
                        if not same or B.index < A.index:
                            keep = False
                    if not keep:
                        break
                if keep:
                    kept.append((p, q))
    raw = _trace(kept, exact)
    return _assemble(raw, band)


def _trace(kept: list[tuple[Point, Point]], exact: bool) -> list[list[Point]]:
    out: dict[Point, list[Point]] = {}
    for p, q in kept:
        out.setdefault(p, []).append(q)

    def successor(u: Point, v: Point) -> Point:
        cands = out.get(v)
        if not cands:
            raise _topology_error(exact, f"boundary chain is open at {tuple(v)}")
        if len(cands) == 1:
            return cands[0]
        ref = (u[0] - v[0], u[1] - v[1])
        return max(cands, key=lambda w: _ccw_from(ref, (w[0] - v[0], w[1] - v[1])))

    used: set[tuple[Point, Point]] = set()
    loops = []
    for start in kept:
        if start in used:
            continue
        chain = []
        edge = start
        while True:
            if edge in used:
                raise _topology_error(exact, "boundary edges do not close into loops")
            used.add(edge)
            chain.append(edge[0])
            nxt = (edge[1], successor(edge[0], edge[1]))
            if nxt == start:
                break
            edge = nxt
        loops.append(chain)
    return loops


def _topology_error(exact: bool, msg: str) -> GeometryError:
    return GeometryError(msg) if exact else ToleranceAmbiguity(msg)


def _assemble(raw: list[list[Point]], band) -> Region:
    outers, holes = [], []
    for chain in raw:
        pts = canonicalize(chain, band)
        if len(pts) < 3:
            continue
        i0 = min(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
        loop = Loop(tuple(pts[i0:] + pts[:i0]))
        a = loop_area(loop)
        if a > 0:
            outers.append(loop)
        elif a < 0:
            holes.append(loop)
    outers.sort(key=lambda l: (l.vertices[0][0], l.vertices[0][1]))
    holes.sort(key=lambda l: (l.vertices[0][0], l.vertices[0][1]))
    owned: dict[int, list[Loop]] = {i: [] for i in range(len(outers))}
    prepared = [_Poly(i, l, band) for i, l in enumerate(outers)]
    for h in holes:
        best = None
        for P in prepared:
            if not _in_bbox(h.vertices[0], P.bbox, band):
                continue
            inside = False
            for a, b in h.edges():
                where, _ = locate(Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), P, band)
                if where != BOUNDARY:
                    inside = where == INSIDE
                    break
            if inside and (best is None or loop_area(P.loop) < loop_area(best.loop)):
                best = P
        if best is None:
            raise GeometryError("hole without an enclosing outer boundary")
        owned[best.index].append(h)
    ordered = []
    for i, o in enumerate(outers):
        ordered.append(o)
        ordered.extend(owned[i])
    return Region(tuple(ordered))


def perimeter_area(polygons: Sequence[Piece], *, strict: bool = False):
    region = union(polygons, strict=strict)
    return region_perimeter(region), region_area(region)


def ratio(polygons: Sequence[Piece], *, strict: bool = False):
    """Perimeter of the union divided by its area (SqrtSum for exact input)."""
    p, a = perimeter_area(polygons, strict=strict)
    if a <= 0:
        raise DegenerateGeometry("union has no area")
    return p / a
