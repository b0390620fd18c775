import csv
import io
import math

import numpy as np
import pytest

from polyratio.constructions import basic_setup, marked_directions, shifted_setup
from polyratio.errors import EpsilonTooLarge
from polyratio.verify import (
    SWEEP_COLUMNS,
    check_common_centre,
    check_square_theorem,
    check_triangle_theorem,
    conjecture_prediction,
    conjecture_sweep,
    directional_derivative,
    ratio_gradient,
    single_ngon_ratio,
    sweep_to_csv,
)


def test_single_ngon_ratio():
    assert abs(single_ngon_ratio(4) - 4) < 1e-15
    assert abs(single_ngon_ratio(3) - 4 * math.sqrt(3)) < 1e-14
    assert abs(single_ngon_ratio(6) - 2.3094010767585) < 1e-12


@pytest.mark.parametrize("k,n", [(5, 4), (1, 3), (7, 3), (2, 5), (11, 5)])
def test_common_centre_examples(k, n):
    rep = check_common_centre(k, n, 1e-9)
    assert rep.passed, rep.summary()
    assert abs(rep.quantities["ratio"] - single_ngon_ratio(n)) < 1e-9


def test_common_centre_report_is_reproducible():
    assert check_common_centre(5, 4).to_json() == check_common_centre(5, 4).to_json()


def test_square_theorem():
    rep = check_square_theorem(0.05)
    assert rep.passed
    q = rep.quantities
    assert abs(q["perimeter_shifted"] - q["perimeter_basic"]) < 1e-9
    assert q["area_shifted"] < q["area_basic"] and q["ratio_shifted"] > 4 + 1e-6


def test_square_theorem_area_gap_is_quadratic():
    big = check_square_theorem(0.05).quantities["area_decrease"]
    small = check_square_theorem(0.01).quantities["area_decrease"]
    assert small > 0
    assert 20 < big / small < 30  # (0.05 / 0.01)**2 = 25


def test_square_ratio_decreases_to_four():
    # eps = 0.1 itself already changes the boundary pattern, so the grid starts at 0.05
    ratios = [check_square_theorem(0.1 * 2**-i, samples=8).quantities["ratio_shifted"] for i in range(1, 7)]
    assert all(r > 4 for r in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_square_theorem_eps_too_large():
    with pytest.raises(EpsilonTooLarge):
        check_square_theorem(10.0, samples=4)


def test_triangle_theorem():
    rep = check_triangle_theorem(0.05, 0.05)
    assert rep.passed and rep.notes["perpendicular"]
    q = rep.quantities
    for j in (0, 1):
        assert abs(q[f"area_single_move_{j}"] - q["area_basic"]) < 1e-12
        assert abs(q[f"perimeter_single_move_{j}"] - q["perimeter_basic"]) < 1e-9
    assert q["area_two_moves"] < q["area_basic"]
    assert q["ratio_two_moves"] > 4 * math.sqrt(3) + 1e-6


def test_triangle_theorem_non_perpendicular_records_sign():
    rep = check_triangle_theorem(0.05, 0.05, vertices=(0, 0))
    assert not rep.notes["perpendicular"]
    # the report carries the measured change; nothing is asserted about its sign
    assert "area_change_two_moves" in rep.quantities


def test_prediction():
    assert conjecture_prediction(5, 4) and conjecture_prediction(4, 3) and conjecture_prediction(7, 3)
    assert not conjecture_prediction(1, 4) and not conjecture_prediction(3, 4)


def test_small_sweep():
    rows = conjecture_sweep(max_k=5, max_n=4)
    cells = {(r["k"], r["n"]): r for r in rows}
    assert cells[(5, 4)]["observed"] and cells[(4, 3)]["observed"]
    assert not cells[(1, 3)]["observed"] and not cells[(1, 4)]["observed"]
    assert [(r["n"], r["k"]) for r in rows] == sorted((r["n"], r["k"]) for r in rows)
    text = sweep_to_csv(rows)
    assert text.splitlines()[0] == ",".join(SWEEP_COLUMNS)
    assert "\r" not in text
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == len(rows)


def test_sweep_csv_error_cell():
    row = {c: None for c in SWEEP_COLUMNS} | {"k": 2, "n": 3, "ratio_single": 1.0, "predicted": False, "error": "EpsilonTooLarge: x"}
    line = sweep_to_csv([row]).splitlines()[1]
    assert "error:EpsilonTooLarge: x" in line


def test_gradient_rotation_zero_at_basic():
    grad, errors = ratio_gradient(basic_setup(5, 4), 1e-5)
    assert not errors and len(grad) == 15
    assert all(abs(g) < 1e-6 for g in grad[2::3])


def test_global_translation_derivative_zero():
    s = basic_setup(5, 4)
    d = directional_derivative(s.pieces, [(1.0, 0.0)] * 5, 1e-5)
    assert abs(d) < 1e-9


def test_shift_direction_one_sided_nonnegative():
    s = basic_setup(5, 4)
    d = directional_derivative(s.pieces, marked_directions(s), 1e-4)
    assert d >= 0


def test_richardson_consistency():
    rng = np.random.default_rng(3)
    s = shifted_setup(5, 4, eps=0.05)
    pieces = [p.moved(*rng.uniform(-0.01, 0.01, 2), float(rng.uniform(-0.01, 0.01))) for p in s.pieces]
    g1, e1 = ratio_gradient(pieces, 1e-4)
    g2, e2 = ratio_gradient(pieces, 5e-5)
    assert not e1 and not e2
    assert max(abs(a - b) for a, b in zip(g1, g2)) < 1e-5


def test_gradient_rejects_bad_step():
    with pytest.raises(ValueError):
        ratio_gradient(basic_setup(5, 4), 0.0)
