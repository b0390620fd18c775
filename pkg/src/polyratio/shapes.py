"""Parametric regular polygons."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateGeometry
from .geom import Loop, Point

TWO_PI = 2 * math.pi


def normalize_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta


@dataclass(frozen=True)
class RegularPolygon:
    """Regular ``n``-gon; ``rotation`` is the angle of vertex 0 seen from the centre."""

    n: int
    side: float = 1.0
    center: Point = field(default_factory=lambda: Point(0.0, 0.0))
    rotation: float = 0.0

    def __post_init__(self):
        if self.n < 3:
            raise DegenerateGeometry(f"a regular polygon needs n >= 3, got {self.n}")
        if not self.side > 0:
            raise DegenerateGeometry(f"side must be positive, got {self.side}")
        object.__setattr__(self, "side", float(self.side))
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "rotation", normalize_angle(float(self.rotation)))

    @property
    def circumradius(self) -> float:
        return self.side / (2 * math.sin(math.pi / self.n))

    @property
    def apothem(self) -> float:
        return self.side / (2 * math.tan(math.pi / self.n))

    def vertex_angle(self, m: int) -> float:
        return self.rotation + TWO_PI * m / self.n

    def vertex(self, m: int) -> Point:
        r, a = self.circumradius, self.vertex_angle(m)
        return Point(self.center[0] + r * math.cos(a), self.center[1] + r * math.sin(a))

    def loop(self) -> Loop:
        return polygon_vertices(self)

    def moved(self, dx: float = 0.0, dy: float = 0.0, dtheta: float = 0.0) -> "RegularPolygon":
        return RegularPolygon(
            self.n,
            self.side,
            Point(self.center[0] + dx, self.center[1] + dy),
            self.rotation + dtheta,
        )


def polygon_vertices(p: RegularPolygon) -> Loop:
    """CCW loop of the ``n`` vertices of ``p``."""
    return Loop(tuple(p.vertex(m) for m in range(p.n)))


def single_ngon_ratio(n: int, side: float = 1.0) -> float:
    """Perimeter-to-area ratio of one regular n-gon: ``2 / apothem``."""
    if n < 3:
        raise DegenerateGeometry(f"n must be >= 3, got {n}")
    return 4 * math.tan(math.pi / n) / side
