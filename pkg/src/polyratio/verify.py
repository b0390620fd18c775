"""Numeric checks of the common-centre lemma, the square and triangle
counterexamples, the shifted-setup conjecture, and finite-difference
gradients of the ratio around the common-centre configuration."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Sequence

from .constructions import (
    basic_setup,
    marked_directions,
    marked_vertices,
    shifted_setup,
    validate_shift,
)
from .errors import EpsilonTooLarge, GeometryError
from .geom import region_area, region_perimeter
from .pattern import is_pattern_preserving
from .setup import Setup
from .shapes import RegularPolygon, single_ngon_ratio
from .union import Piece, union

__all__ = [
    "LemmaReport",
    "single_ngon_ratio",
    "check_common_centre",
    "check_square_theorem",
    "check_triangle_theorem",
    "conjecture_sweep",
    "ratio_gradient",
    "SWEEP_COLUMNS",
]

STRICT_MARGIN = 1e-12


@dataclass
class LemmaReport:
    claim: str
    quantities: dict[str, float]
    passed: bool
    tolerance: float
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"{self.claim}: {'PASS' if self.passed else 'FAIL'} (tol {self.tolerance:g})"]
        for name, value in self.quantities.items():
            lines.append(f"  {name} = {value!r}")
        return "\n".join(lines)


def _measure(pieces: Sequence[Piece]):
    region = union(pieces)
    p, a = float(region_perimeter(region)), float(region_area(region))
    return region, p, a


def check_common_centre(k: int, n: int, tol: float = 1e-9) -> LemmaReport:
    """Ratio of the basic (k, n) setup against 2 / apothem, plus the edge-distance property."""
    setup = basic_setup(k, n)
    region, p, a = _measure(setup.pieces)
    d = setup.pieces[0].apothem
    worst = 0.0
    for loop in region.loops:
        for u, v in loop.edges():
            length = math.hypot(v[0] - u[0], v[1] - u[1])
            dist = abs(u[0] * v[1] - u[1] * v[0]) / length
            worst = max(worst, abs(dist - d))
    r = p / a
    expected = single_ngon_ratio(n)
    passed = abs(r - expected) < tol and worst < tol
    return LemmaReport(
        f"common-centre({k},{n})",
        {
            "ratio": r,
            "single_ngon_ratio": expected,
            "perimeter": p,
            "area": a,
            "apothem": d,
            "max_edge_distance_error": worst,
            "boundary_vertices": float(region.vertex_count),
        },
        passed,
        tol,
    )


def check_square_theorem(eps: float = 0.05, tol: float = 1e-9, samples: int = 64) -> LemmaReport:
    """Shifted (5,4) setup: perimeter as in the basic setup, strictly smaller area, ratio > 4."""
    base = basic_setup(5, 4)
    failure = validate_shift(base, eps, samples)
    if failure is not None:
        raise EpsilonTooLarge(
            f"eps={eps} is not pattern preserving ({failure.failure_kind} at t={failure.first_failure_t:g})"
        )
    shifted = shifted_setup(5, 4, eps=eps)
    _, pb, ab = _measure(base.pieces)
    _, ps, as_ = _measure(shifted.pieces)
    r = ps / as_
    margin = max(tol, STRICT_MARGIN)
    passed = abs(ps - pb) < tol and as_ < ab - margin and r > 4 + margin
    return LemmaReport(
        "square-theorem",
        {
            "eps": eps,
            "perimeter_basic": pb,
            "perimeter_shifted": ps,
            "area_basic": ab,
            "area_shifted": as_,
            "area_decrease": ab - as_,
            "ratio_basic": pb / ab,
            "ratio_shifted": r,
        },
        passed,
        tol,
    )


def _translate(pieces, j, v):
    out = list(pieces)
    out[j] = out[j].moved(v[0], v[1])
    return out


def check_triangle_theorem(
    eps1: float = 0.05,
    eps2: float = 0.05,
    tol: float = 1e-9,
    vertices: tuple[int, int] | None = None,
    samples: int = 64,
) -> LemmaReport:
    """Two neighbouring triangles of the basic (4,3) setup moved towards a vertex each.

    ``vertices`` picks the vertex index each of triangles 0 and 1 moves
    towards; the default uses the marked vertices, whose directions are
    perpendicular.  Sub-claims (i) perimeter and (ii) area unchanged after a
    single translation are checked for both triangles separately; (iii)
    needs both moved: perimeter unchanged, area strictly smaller, ratio above
    the single triangle's.  For non-perpendicular directions the area change
    is reported but not required to be negative.
    """
    base = basic_setup(4, 3)
    if vertices is None:
        vertices = tuple(marked_vertices(base)[:2])
    p0, p1 = base.pieces[0], base.pieces[1]
    a0, a1 = p0.vertex_angle(vertices[0]), p1.vertex_angle(vertices[1])
    v0 = (eps1 * math.cos(a0), eps1 * math.sin(a0))
    v1 = (eps2 * math.cos(a1), eps2 * math.sin(a1))
    perpendicular = abs(math.cos(a0 - a1)) < 1e-12

    for pieces, j, v in ((base.pieces, 0, v0), (base.pieces, 1, v1), (_translate(base.pieces, 0, v0), 1, v1)):
        report = is_pattern_preserving(pieces, j, v, samples)
        if not report.preserved:
            raise EpsilonTooLarge(
                f"translation of triangle {j} is not pattern preserving "
                f"({report.failure_kind} at t={report.first_failure_t:g})"
            )

    _, pb, ab = _measure(base.pieces)
    _, p_one0, a_one0 = _measure(_translate(base.pieces, 0, v0))
    _, p_one1, a_one1 = _measure(_translate(base.pieces, 1, v1))
    _, p_two, a_two = _measure(_translate(_translate(base.pieces, 0, v0), 1, v1))
    single = single_ngon_ratio(3)
    r_two = p_two / a_two
    margin = max(tol, STRICT_MARGIN)
    lemma_i = abs(p_one0 - pb) < tol and abs(p_one1 - pb) < tol
    lemma_ii = abs(a_one0 - ab) < tol and abs(a_one1 - ab) < tol
    lemma_iii = abs(p_two - pb) < tol and a_two < ab - margin and r_two > single + margin
    passed = lemma_i and lemma_ii and (lemma_iii if perpendicular else abs(p_two - pb) < tol)
    return LemmaReport(
        "triangle-theorem",
        {
            "eps1": eps1,
            "eps2": eps2,
            "perimeter_basic": pb,
            "area_basic": ab,
            "perimeter_single_move_0": p_one0,
            "area_single_move_0": a_one0,
            "perimeter_single_move_1": p_one1,
            "area_single_move_1": a_one1,
            "perimeter_two_moves": p_two,
            "area_two_moves": a_two,
            "area_change_two_moves": a_two - ab,
            "ratio_two_moves": r_two,
            "single_triangle_ratio": single,
        },
        passed,
        tol,
        {
            "perpendicular": perpendicular,
            "vertices": list(vertices),
            "single_move_perimeter_unchanged": lemma_i,
            "single_move_area_unchanged": lemma_ii,
            "two_moves_ratio_increased": lemma_iii,
        },
    )


SWEEP_COLUMNS = ("k", "n", "ratio_single", "ratio_shifted", "delta", "predicted", "observed", "eps_used")


def conjecture_prediction(k: int, n: int) -> bool:
    return k > 1 and k % n == 1


def _sweep_cell(k: int, n: int, eps: float, tol: float, samples: int) -> dict:
    single = single_ngon_ratio(n)
    row = {
        "k": k,
        "n": n,
        "ratio_single": single,
        "ratio_shifted": None,
        "delta": None,
        "predicted": conjecture_prediction(k, n),
        "observed": None,
        "eps_used": None,
        "error": None,
    }
    try:
        s = shifted_setup(k, n, eps=eps, validate=True, samples=samples)
        _, p, a = _measure(s.pieces)
    except (GeometryError, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    r = p / a
    row.update(ratio_shifted=r, delta=r - single, observed=r - single > tol, eps_used=s.meta["eps"])
    return row


def conjecture_sweep(
    max_k: int = 12,
    max_n: int = 8,
    eps: float = 0.05,
    tol: float = 1e-9,
    samples: int = 4,
    workers: int = 1,
) -> list[dict]:
    """Shifted-setup ratio minus the single-polygon ratio for every coprime (k, n).

    Rows are ordered by (n, k).  ``observed`` is whether the shifted ratio
    exceeds the single one by more than ``tol``; ``predicted`` is
    ``k > 1 and k = 1 (mod n)``.  Disagreements are data, not failures.
    Pattern preservation is validated with ``samples`` interior points per
    translation, halving ``eps`` on failure.
    """
    cells = [(k, n) for n in range(3, max_n + 1) for k in range(1, max_k + 1) if gcd(k, n) == 1]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_sweep_cell, k, n, eps, tol, samples) for k, n in cells]
            return [f.result() for f in futures]
    return [_sweep_cell(k, n, eps, tol, samples) for k, n in cells]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_to_csv(rows: Sequence[dict]) -> str:
    """CSV text with LF line endings; failed cells carry ``error:<message>`` in ``observed``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        cells = [_fmt(row[c]) for c in SWEEP_COLUMNS]
        if row.get("error"):
            cells[SWEEP_COLUMNS.index("observed")] = f"error:{row['error']}"
        writer.writerow(cells)
    return buf.getvalue()


def _coordinates(pieces: Sequence[RegularPolygon]) -> list[float]:
    return [c for p in pieces for c in (p.center[0], p.center[1], p.rotation)]


def _with_coordinate(pieces: Sequence[RegularPolygon], idx: int, delta: float):
    j, which = divmod(idx, 3)
    out = list(pieces)
    dx = delta if which == 0 else 0.0
    dy = delta if which == 1 else 0.0
    dr = delta if which == 2 else 0.0
    out[j] = out[j].moved(dx, dy, dr)
    return out


def _ratio(pieces) -> float:
    _, p, a = _measure(pieces)
    return p / a


def ratio_gradient(s: Setup | Sequence[RegularPolygon], h: float = 1e-5):
    """Central differences of the ratio in (x, y, rotation) of every polygon.

    Returns ``(gradient, errors)``: a list of 3k floats (NaN where a stencil
    point failed) and a dict mapping failed coordinate indices to messages.
    """
    if not h > 0:
        raise ValueError("step must be positive")
    pieces = list(s.pieces if isinstance(s, Setup) else s)
    if not all(isinstance(p, RegularPolygon) for p in pieces):
        raise TypeError("gradients need parametric regular polygons")
    grad, errors = [], {}
    for idx in range(3 * len(pieces)):
        try:
            up = _ratio(_with_coordinate(pieces, idx, h))
            down = _ratio(_with_coordinate(pieces, idx, -h))
        except GeometryError as exc:
            grad.append(float("nan"))
            errors[idx] = f"{type(exc).__name__}: {exc}"
            continue
        grad.append((up - down) / (2 * h))
    return grad, errors


def directional_derivative(pieces: Sequence[RegularPolygon], moves, h: float, one_sided: bool = True):
    """Difference quotient of the ratio along translations ``moves`` (one (dx, dy) per polygon)."""
    base = _ratio(pieces)
    fwd = _ratio([p.moved(h * dx, h * dy) for p, (dx, dy) in zip(pieces, moves)])
    if one_sided:
        return (fwd - base) / h
    back = _ratio([p.moved(-h * dx, -h * dy) for p, (dx, dy) in zip(pieces, moves)])
    return (fwd - back) / (2 * h)


def shift_directions(k: int, n: int):
    return marked_directions(basic_setup(k, n))
