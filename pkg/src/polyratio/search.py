"""Stochastic search for unions with a large perimeter-to-area ratio.

Proposals move one polygon (or ``moves`` of them) by random rigid motions.  A round draws
``fanout`` proposals from the generator in a fixed order, evaluates them
(optionally in worker processes), keeps the best one (ties to the lowest
proposal index) and runs the acceptance rule on it.  Results depend only on
the initial setup and the parameters.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import GeometryError, InitialEvaluationFailed
from .geom import EXACT, region_area, region_perimeter
from .setup import Setup, setup_to_dict
from .shapes import RegularPolygon
from .union import Piece, as_loop, union

HILL_CLIMB = "hill-climb"
ANNEAL = "anneal"
REJECT = "reject"
ALLOW_AND_FLAG = "allow-and-flag"

RNG_NAME = "numpy.random.PCG64"
_FLAGGED = ("disconnected", "holes")


@dataclass(frozen=True)
class SearchParams:
    iterations: int = 1000
    step_scale: float = 0.05
    step_decay: float = 1.0
    rule: str = HILL_CLIMB
    t0: float = 0.01
    cooling: float = 0.999
    seed: int = 0
    hole_policy: str = REJECT
    fanout: int = 1
    workers: int = 1
    moves: int = 1
    min_scale: float = 1e-6
    min_gain: float = 1e-12

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not self.step_scale > 0 or not self.min_scale > 0 or self.min_gain < 0:
            raise ValueError("scales must be positive")
        if not 0 < self.step_decay <= 1:
            raise ValueError("step decay must lie in (0, 1]")
        if self.rule not in (HILL_CLIMB, ANNEAL):
            raise ValueError(f"unknown acceptance rule {self.rule!r}")
        if self.rule == ANNEAL and not (self.t0 > 0 and 0 < self.cooling <= 1):
            raise ValueError("anneal needs T0 > 0 and cooling in (0, 1]")
        if self.hole_policy not in (REJECT, ALLOW_AND_FLAG):
            raise ValueError(f"unknown hole policy {self.hole_policy!r}")
        if self.moves < 0:
            raise ValueError("moves must be >= 0 (0 moves every polygon)")
        if self.fanout < 1 or self.workers < 1:
            raise ValueError("fanout and workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, doc: dict) -> "SearchParams":
        return cls(**doc)


@dataclass
class SearchResult:
    best: Setup
    best_ratio: float
    trace: list[tuple[int, float]]
    evaluations: int
    flagged: bool = False
    rejected: dict[str, int] = field(default_factory=dict)
    params: SearchParams | None = None
    rng: str = RNG_NAME
    rng_version: str = np.__version__

    def to_dict(self) -> dict:
        return {
            "best_ratio": self.best_ratio,
            "evaluations": self.evaluations,
            "flagged": self.flagged,
            "rejected": dict(sorted(self.rejected.items())),
            "trace": [[i, r] for i, r in self.trace],
            "params": asdict(self.params) if self.params else None,
            "rng": {"name": self.rng, "numpy": self.rng_version},
            "setup": setup_to_dict(self.best),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())


def _rigid(piece: Piece, dx: float, dy: float, dtheta: float) -> Piece:
    if isinstance(piece, RegularPolygon):
        return piece.moved(dx, dy, dtheta)
    loop = as_loop(piece).to_float()
    if dtheta:
        loop = loop.rotated(dtheta, loop.centroid())
    return loop.translated(dx, dy)


def perturb(s: Setup, scale: float, rng: np.random.Generator, moves: int = 1) -> Setup:
    """Move ``moves`` distinct polygons (0 = all), chosen uniformly.

    Each moved polygon gets a centre shift drawn uniformly from the disc of
    radius ``scale`` and a rotation drawn from Uniform(-scale, scale)
    radians.  The default moves a single polygon.
    """
    if scale < 0:
        raise ValueError("scale must be non-negative")
    k = len(s.pieces)
    count = k if moves == 0 else min(moves, k)
    chosen = [int(rng.integers(k))] if count == 1 else sorted(rng.choice(k, count, replace=False).tolist())
    jitter = []
    for _ in chosen:
        r = scale * math.sqrt(rng.random())
        phi = 2 * math.pi * rng.random()
        jitter.append((r * math.cos(phi), r * math.sin(phi), scale * (2 * rng.random() - 1)))
    if scale == 0:
        return s
    pieces = list(s.pieces)
    for j, (dx, dy, dtheta) in zip(chosen, jitter):
        pieces[j] = _rigid(pieces[j], dx, dy, dtheta)
    return s.with_pieces(pieces)


def as_float_setup(s: Setup) -> Setup:
    """Exact loops become float loops so that moved and unmoved pieces share a backend."""
    if all(isinstance(p, RegularPolygon) or as_loop(p).backend != EXACT for p in s.pieces):
        return s
    return s.with_pieces([p if isinstance(p, RegularPolygon) else as_loop(p).to_float() for p in s.pieces])


def evaluate(pieces: Sequence[Piece], hole_policy: str = REJECT):
    """(ratio, None, has_holes) or (None, reason, False) for a rejected configuration."""
    try:
        region = union(pieces)
    except GeometryError as exc:
        return None, exc.kind, False
    outers = region.outers
    if len(outers) != 1:
        return None, "disconnected", False
    holes = bool(region.holes)
    if holes and hole_policy == REJECT:
        return None, "holes", False
    a = float(region_area(region))
    if not a > 0:
        return None, "degenerate", False
    return float(region_perimeter(region)) / a, None, holes


def _evaluate_setup(args):
    s, policy = args
    return evaluate(s.pieces, policy)


class _Evaluator:
    def __init__(self, workers: int):
        self.pool = None
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor

            self.pool = ProcessPoolExecutor(workers)

    def map(self, setups, policy):
        jobs = [(s, policy) for s in setups]
        if self.pool is None:
            return [_evaluate_setup(j) for j in jobs]
        return list(self.pool.map(_evaluate_setup, jobs))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def _initial(s: Setup, params: SearchParams):
    r, reason, holes = evaluate(s.pieces, params.hole_policy)
    if r is None:
        raise InitialEvaluationFailed(f"initial setup cannot be evaluated: {reason}")
    return r, holes


def optimize(initial: Setup, params: SearchParams) -> SearchResult:
    """Hill climbing or simulated annealing over random rigid motions of the polygons."""
    initial = as_float_setup(initial)
    best_ratio, flagged = _initial(initial, params)
    current, current_ratio, best = initial, best_ratio, initial
    trace = [(0, best_ratio)]
    rejected: dict[str, int] = {}
    evaluations = 1
    rng = np.random.Generator(np.random.PCG64(params.seed))
    scale, temp = params.step_scale, params.t0
    ev = _Evaluator(params.workers)
    try:
        for it in range(1, params.iterations + 1):
            proposals = [perturb(current, scale, rng, params.moves) for _ in range(params.fanout)]
            results = ev.map(proposals, params.hole_policy)
            evaluations += len(proposals)
            pick = None
            for idx, (r, reason, holes) in enumerate(results):
                flagged |= holes or reason in _FLAGGED
                if r is None:
                    rejected[reason] = rejected.get(reason, 0) + 1
                    continue
                if pick is None or r > results[pick][0]:
                    pick = idx
            u = rng.random()
            if pick is not None:
                r = results[pick][0]
                if r > current_ratio + params.min_gain:
                    accept = True
                elif params.rule == ANNEAL:
                    accept = u < math.exp((r - current_ratio) / temp)
                else:
                    accept = False
                if accept:
                    current, current_ratio = proposals[pick], r
                    if r > best_ratio + params.min_gain:
                        best, best_ratio = current, r
                        trace.append((it, r))
            scale = max(scale * params.step_decay, params.min_scale)
            temp *= params.cooling
    finally:
        ev.close()
    return SearchResult(best, best_ratio, trace, evaluations, flagged, rejected, params)


def _coordinate_move(s: Setup, idx: int, delta: float) -> Setup:
    j, which = divmod(idx, 3)
    move = [0.0, 0.0, 0.0]
    move[which] = delta
    pieces = list(s.pieces)
    pieces[j] = _rigid(pieces[j], *move)
    return s.with_pieces(pieces)


def refine(s: Setup, params: SearchParams) -> SearchResult:
    """Cyclic coordinate descent over (x, y, rotation) of every polygon.

    Each coordinate is probed at +scale and -scale; improvements are taken
    at once.  After a sweep with no improvement the scale is multiplied by
    the step decay (0.5 when the decay is 1).  Stops after ``iterations``
    sweeps or once the scale falls below ``min_scale``.
    """
    s = as_float_setup(s)
    best_ratio, flagged = _initial(s, params)
    best = s
    trace = [(0, best_ratio)]
    rejected: dict[str, int] = {}
    evaluations = 1
    decay = params.step_decay if params.step_decay < 1 else 0.5
    scale = params.step_scale
    for sweep in range(1, params.iterations + 1):
        if scale < params.min_scale:
            break
        improved = False
        for idx in range(3 * len(best.pieces)):
            for sign in (1, -1):
                cand = _coordinate_move(best, idx, sign * scale)
                r, reason, holes = evaluate(cand.pieces, params.hole_policy)
                evaluations += 1
                flagged |= holes or reason in _FLAGGED
                if r is None:
                    rejected[reason] = rejected.get(reason, 0) + 1
                    continue
                if r > best_ratio + params.min_gain:
                    best, best_ratio, improved = cand, r, True
                    trace.append((sweep, r))
                    break
        if not improved:
            scale *= decay
    return SearchResult(best, best_ratio, trace, evaluations, flagged, rejected, params)

