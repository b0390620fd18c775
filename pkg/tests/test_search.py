import json
import math

import numpy as np
import pytest

from conftest import square
from polyratio.constructions import basic_setup, four_square_example
from polyratio.errors import InitialEvaluationFailed
from polyratio.geom import Loop
from polyratio.search import (
    ANNEAL,
    SearchParams,
    evaluate,
    optimize,
    perturb,
    refine,
)
from polyratio.setup import Setup


def rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


def test_params_validation():
    with pytest.raises(ValueError):
        SearchParams(iterations=0)
    with pytest.raises(ValueError):
        SearchParams(step_decay=1.5)
    with pytest.raises(ValueError):
        SearchParams(rule="greedy")
    with pytest.raises(ValueError):
        SearchParams(hole_policy="ignore")


def test_perturb_zero_scale_identity():
    s = basic_setup(5, 4)
    assert perturb(s, 0.0, rng()) == s


def test_perturb_deterministic():
    s = basic_setup(5, 4)
    a, b = rng(7), rng(7)
    for _ in range(20):
        assert perturb(s, 0.05, a) == perturb(s, 0.05, b)


def test_perturb_moves_one_polygon_within_scale():
    s = basic_setup(5, 4)
    g = rng(1)
    for _ in range(1000):
        t = perturb(s, 0.05, g)
        changed = [j for j, (p, q) in enumerate(zip(s.pieces, t.pieces)) if p != q]
        assert len(changed) == 1
        for p in t.pieces:
            assert math.hypot(*p.center) <= 0.05 + 1e-15


def test_perturb_all_polygons():
    s = basic_setup(5, 4)
    t = perturb(s, 0.05, rng(2), moves=0)
    assert all(p != q for p, q in zip(s.pieces, t.pieces))


def test_perturb_loops_is_rigid():
    s = Setup((square(0, 0, exact=False), square(0.5, 0.3, exact=False)))
    t = perturb(s, 0.1, rng(3))
    for p, q in zip(s.pieces, t.pieces):
        sides = [math.dist(a, b) for a, b in q.edges()]
        assert all(abs(x - 1) < 1e-12 for x in sides)


def test_single_square_stays_at_four():
    s = Setup((Loop(((0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5))),))
    res = optimize(s, SearchParams(iterations=200, seed=5))
    assert res.best_ratio == 4.0 and res.trace == [(0, 4.0)]


def test_hill_climb_trace_monotone():
    res = optimize(basic_setup(5, 4), SearchParams(iterations=300, seed=42, moves=0))
    ratios = [r for _, r in res.trace]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert res.best_ratio == ratios[-1]
    assert res.best_ratio > 4.0
    assert res.evaluations == 301


def test_single_polygon_moves_do_not_improve_basic():
    # every single-polygon rigid motion of the basic setup lowers the ratio
    res = optimize(basic_setup(5, 4), SearchParams(iterations=200, seed=42))
    assert len(res.trace) == 1


def test_disconnected_proposals_rejected():
    s = Setup((square(0, 0, exact=False), square(0.9, 0, exact=False)))
    res = optimize(s, SearchParams(iterations=100, step_scale=0.5, seed=1))
    assert res.rejected.get("disconnected", 0) > 0
    assert res.flagged


def test_initial_failure():
    s = Setup((square(0, 0, exact=False), square(3, 0, exact=False)))
    with pytest.raises(InitialEvaluationFailed):
        optimize(s, SearchParams(iterations=1))


def test_hole_policy():
    ring = [
        Loop(((0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (0.0, 1.0))),
        Loop(((2.0, 0.0), (3.0, 0.0), (3.0, 3.0), (2.0, 3.0))),
        Loop(((0.0, 2.0), (3.0, 2.0), (3.0, 3.0), (0.0, 3.0))),
        Loop(((0.0, 0.0), (1.0, 0.0), (1.0, 3.0), (0.0, 3.0))),
    ]
    assert evaluate(ring, "reject")[1] == "holes"
    r, reason, holes = evaluate(ring, "allow-and-flag")
    assert reason is None and holes and r == pytest.approx(2.0)


def test_optimize_deterministic_and_parallel_invariant():
    s = basic_setup(5, 4)
    p1 = SearchParams(iterations=30, seed=9, fanout=4, moves=0)
    p2 = SearchParams(iterations=30, seed=9, fanout=4, moves=0, workers=2)
    a, b = optimize(s, p1), optimize(s, p1)
    c = optimize(s, p2)
    assert a.to_json() == b.to_json()
    assert a.best_ratio == c.best_ratio and a.trace == c.trace


def test_anneal_runs():
    res = optimize(basic_setup(5, 4), SearchParams(iterations=100, seed=3, rule=ANNEAL, t0=1e-3, cooling=0.99, moves=0))
    assert res.best_ratio >= res.trace[0][1]


def test_result_json(tmp_path):
    res = optimize(basic_setup(3, 4), SearchParams(iterations=5, seed=1))
    res.write(tmp_path / "r.json")
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["rng"]["name"] == "numpy.random.PCG64"
    assert doc["params"]["seed"] == 1 and len(doc["setup"]["polygons"]) == 3


def test_refine_unchanged_below_floor():
    s = basic_setup(5, 4)
    res = refine(s, SearchParams(iterations=5, step_scale=1e-7, min_scale=1e-6))
    assert res.best == s and len(res.trace) == 1


def test_refine_four_squares():
    s = four_square_example()
    res = refine(s, SearchParams(iterations=3, step_scale=0.01))
    ratios = [r for _, r in res.trace]
    assert ratios[0] == pytest.approx(4.0227244, abs=1e-6)
    assert res.best_ratio >= 4.02 - 0.01 and res.best_ratio >= ratios[0]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
