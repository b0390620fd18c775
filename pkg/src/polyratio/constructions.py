"""Generators for the configurations studied: common-centre setups, their
shifted variants, and the explicit square and triangle examples."""
from __future__ import annotations

import math
from fractions import Fraction as F
from importlib import resources
from math import gcd

from .errors import EpsilonTooLarge, MissingDataFile, NotBasicSetup, NotCoprime
from .geom import Loop, Point
from .setup import Setup, setup_from_dict
from .shapes import TWO_PI, RegularPolygon

MAX_HALVINGS = 20


def _check_coprime(k: int, n: int) -> None:
    if k < 1 or n < 3:
        raise ValueError(f"need k >= 1 and n >= 3, got k={k}, n={n}")
    if gcd(k, n) != 1:
        raise NotCoprime(f"k={k} and n={n} are not coprime")


def basic_setup(k: int, n: int, side: float = 1.0) -> Setup:
    """k regular n-gons centred at the origin whose kn vertices form a regular kn-gon."""
    _check_coprime(k, n)
    pieces = tuple(
        RegularPolygon(n, side, Point(0.0, 0.0), j * TWO_PI / (k * n)) for j in range(k)
    )
    return Setup(pieces, f"basic({k},{n})", float(side), {"kind": "basic", "k": k, "n": n})


def _basic_parameters(s: Setup) -> tuple[int, int]:
    polys = s.pieces
    if not all(isinstance(p, RegularPolygon) for p in polys):
        raise NotBasicSetup("setup contains explicit loops")
    k, n = len(polys), polys[0].n
    for j, p in enumerate(polys):
        if p.n != n or p.side != polys[0].side or p.center != (0.0, 0.0):
            raise NotBasicSetup("polygons differ in shape or centre")
        expected = j * TWO_PI / (k * n)
        if abs(math.remainder(p.rotation - expected, TWO_PI)) > 1e-12:
            raise NotBasicSetup(f"polygon {j} has rotation {p.rotation}, expected {expected}")
    if gcd(k, n) != 1:
        raise NotBasicSetup("k and n are not coprime")
    return k, n


def marked_vertices(s: Setup) -> list[int]:
    """Per polygon, the vertex index whose k choices form a regular k-gon about O.

    Polygon j's vertex m sits at angle 2*pi*(j + k*m)/(k*n); choosing
    m = -j * k^-1 (mod n) makes j + k*m a multiple of n.
    """
    k, n = _basic_parameters(s)
    k_inv = pow(k, -1, n)
    return [(-j * k_inv) % n for j in range(k)]


def marked_directions(s: Setup) -> list[tuple[float, float]]:
    out = []
    for p, m in zip(s.pieces, marked_vertices(s)):
        a = p.vertex_angle(m)
        out.append((math.cos(a), math.sin(a)))
    return out


def _shift(base: Setup, eps: float) -> list[RegularPolygon]:
    return [
        p.moved(eps * ux, eps * uy) for p, (ux, uy) in zip(base.pieces, marked_directions(base))
    ]


def validate_shift(base: Setup, eps: float, samples: int = 64, certify: bool = False):
    """Check the k translations one after another; return the first failing report or None."""
    from .pattern import is_pattern_preserving

    current = list(base.pieces)
    for j, (ux, uy) in enumerate(marked_directions(base)):
        report = is_pattern_preserving(current, j, (eps * ux, eps * uy), samples, certify)
        if not report.preserved:
            return report
        current[j] = current[j].moved(eps * ux, eps * uy)
    return None


def shifted_setup(
    k: int,
    n: int,
    side: float = 1.0,
    eps: float | None = None,
    *,
    validate: bool = False,
    samples: int = 64,
    certify: bool = False,
) -> Setup:
    """Basic setup with polygon j moved by ``eps`` towards its marked vertex.

    With ``validate`` the translations are checked for pattern preservation
    and ``eps`` is halved (at most 20 times) until they pass.
    """
    _check_coprime(k, n)
    if eps is None:
        eps = 0.05 * side
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps}")
    base = basic_setup(k, n, side)
    if eps == 0:
        return base
    validated = False
    if validate:
        for _ in range(MAX_HALVINGS + 1):
            failure = validate_shift(base, eps, samples, certify)
            if failure is None:
                validated = True
                break
            eps /= 2
        else:
            raise EpsilonTooLarge(
                f"no pattern-preserving shift for ({k},{n}) down to eps={eps * 2:g}"
            )
    meta = {"kind": "shifted", "k": k, "n": n, "eps": eps, "validated": validated}
    return Setup(tuple(_shift(base, eps)), f"shifted({k},{n})", float(side), meta)


def four_square_example() -> Setup:
    """Four unit squares with rational vertices whose union has ratio about 4.02."""
    h = F(1, 2)
    a = 650
    b = 1450
    squares = [
        [(h, h), (-h, h), (-h, -h), (h, -h)],
        [(F(149, a), F(399, a)), (F(-451, a), F(149, a)), (F(-201, a), F(-451, a)), (F(399, a), F(-201, a))],
        [(F(399, a), F(201, a)), (F(-201, a), F(451, a)), (F(-451, a), F(-149, a)), (F(149, a), F(-399, a))],
        [(F(-91, b), F(41, 58)), (F(-1141, b), F(1, 58)), (F(-141, b), F(-41, 58)), (F(909, b), F(-1, 58))],
    ]
    pieces = tuple(Loop(tuple(Point(x, y) for x, y in sq)) for sq in squares)
    return Setup(pieces, "four-square", 1.0, {"kind": "four-square"})


INSCRIBED_SQUARE_SIDE = 2 * math.sqrt(3) - 3


def inscribed_square_triangles(count: int = 3) -> Setup:
    """Unit triangles built on the sides of the largest square inscribed in a unit triangle.

    The square (side 2*sqrt(3) - 3) is centred at O.  Each triangle has one
    side on the line of a square side, centred on it, and contains the
    square.  count=3 uses the top, bottom and left sides; count=4 adds the
    right one.
    """
    if count not in (3, 4):
        raise ValueError(f"count must be 3 or 4, got {count}")
    half = INSCRIBED_SQUARE_SIDE / 2
    inradius = 1 / (2 * math.sqrt(3))
    normals = [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (1.0, 0.0)][:count]
    pieces = []
    for ux, uy in normals:
        centre = Point(ux * (half - inradius), uy * (half - inradius))
        pieces.append(RegularPolygon(3, 1.0, centre, math.atan2(-uy, -ux)))
    return Setup(tuple(pieces), f"triangles{count}", 1.0, {"kind": f"triangles{count}"})


def figure6_setup() -> Setup:
    """The 25-square rosette (coordinates rounded to 5 decimals)."""
    from json import loads

    try:
        text = resources.files("polyratio").joinpath("data/figure6.json").read_text()
    except FileNotFoundError as exc:
        raise MissingDataFile("figure6.json is not installed with the package") from exc
    return setup_from_dict(loads(text))
