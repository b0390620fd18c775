import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import close, square
from polyratio.errors import BackendMismatch, DegenerateGeometry
from polyratio.exact import SqrtSum
from polyratio.geom import (
    Loop,
    Point,
    Region,
    canonicalize,
    get_tolerance,
    is_simple,
    loop_area,
    loop_perimeter,
    orient,
    point,
    region_area,
    region_perimeter,
    segment,
    segment_intersection,
    tolerance,
)


def P(x, y):
    return point(F(x), F(y))


@pytest.mark.parametrize(
    "r, expected", [((0, 1), 1), ((2, 0), 0), ((1, 0), -1)]
)
def test_orient_examples(r, expected):
    q = (1, 0) if expected != -1 else (0, 1)
    assert orient(P(0, 0), P(*q), P(*r)) == expected


def test_orient_float_tolerance():
    assert orient(Point(0.0, 0.0), Point(1.0, 0.0), Point(2.0, 1e-12)) == 0
    with tolerance(0.0):
        assert orient(Point(0.0, 0.0), Point(1.0, 0.0), Point(2.0, 1e-12)) == 1


def test_orient_mixed_backends():
    with pytest.raises(BackendMismatch):
        orient(Point(F(0), F(0)), Point(1.0, 0.0), Point(F(0), F(1)))


def test_non_finite_rejected():
    with pytest.raises(DegenerateGeometry):
        point(float("nan"), 0.0)


def test_segment_crossing():
    hit = segment_intersection(segment((0, 0), (1, 1)), segment((0, 1), (1, 0)))
    assert hit == (F(1, 2), F(1, 2))


def test_segment_parallel_disjoint():
    assert segment_intersection(segment((0, 0), (1, 0)), segment((0, 1), (1, 1))) is None


def test_segment_overlap():
    hit = segment_intersection(segment((0, 0), (2, 0)), segment((1, 0), (3, 0)))
    assert tuple(hit) == ((1, 0), (2, 0))


def test_segment_touching_endpoint():
    assert segment_intersection(segment((0, 0), (1, 0)), segment((1, 0), (1, 1))) == (1, 0)


def test_zero_length_segment():
    with pytest.raises(DegenerateGeometry):
        segment((1, 1), (1, 1))


def test_loop_area_examples(unit_square):
    assert loop_area(unit_square) == 1
    assert loop_area(unit_square.reversed()) == -1
    assert loop_area(Loop(((0, 0), (1, 0), (0, 1)))) == F(1, 2)


def test_loop_needs_three_distinct_vertices():
    with pytest.raises(DegenerateGeometry):
        Loop(((0, 0), (1, 0)))
    with pytest.raises(DegenerateGeometry):
        Loop(((0, 0), (1, 0), (1, 0), (0, 1)))


def test_exact_perimeter_is_sqrt_sum():
    tri = Loop(((0, 0), (1, 0), (0, 1)))
    p = loop_perimeter(tri)
    assert isinstance(p, SqrtSum)
    assert p == SqrtSum.rational(2) + SqrtSum.sqrt(2)


def test_region_examples(unit_square):
    assert region_area(Region((unit_square,))) == 1
    assert float(region_perimeter(Region((unit_square,)))) == 4
    two = Region((unit_square, square(3, 0)))
    assert region_area(two) == 2 and float(region_perimeter(two)) == 8
    holed = Region((unit_square, square(0, 0, F(1, 2)).reversed()))
    assert region_area(holed) == F(3, 4)
    assert float(region_perimeter(holed)) == 6
    assert len(holed.outers) == 1 and len(holed.holes) == 1


def test_canonicalize_merges_collinear_and_duplicates():
    pts = [P(0, 0), P(1, 0), P(2, 0), P(2, 0), P(2, 2), P(0, 2)]
    assert canonicalize(pts) == [P(0, 0), P(2, 0), P(2, 2), P(0, 2)]


def test_is_simple():
    assert is_simple(square())
    bow = Loop(((0, 0), (1, 1), (1, 0), (0, 1)))
    assert not is_simple(bow)


def test_default_tolerance():
    assert get_tolerance() == 1e-9


coords = st.integers(-20, 20)


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=8, unique=True), st.integers(0, 7))
def test_area_cyclic_and_reversal(pts, shift):
    try:
        loop = Loop(tuple(pts))
    except DegenerateGeometry:
        return
    k = shift % len(pts)
    rolled = Loop(tuple(pts[k:] + pts[:k]))
    assert loop_area(rolled) == loop_area(loop)
    assert loop_area(loop.reversed()) == -loop_area(loop)


@given(
    st.floats(-math.pi, math.pi),
    st.floats(-10, 10),
    st.floats(-10, 10),
)
def test_rigid_motion_invariance(angle, dx, dy):
    base = Loop(((0.0, 0.0), (2.0, 0.0), (2.5, 1.0), (0.5, 1.5)))
    moved = base.rotated(angle, Point(0.3, -0.2)).translated(dx, dy)
    assert close(loop_area(moved), loop_area(base))
    assert close(loop_perimeter(moved), loop_perimeter(base))


@given(st.lists(st.tuples(st.fractions(-5, 5, max_denominator=100), st.fractions(-5, 5, max_denominator=100)), min_size=3, max_size=6, unique=True))
def test_exact_matches_float(pts):
    try:
        exact = Loop(tuple(pts))
    except DegenerateGeometry:
        return
    flt = exact.to_float()
    assert close(loop_area(exact), loop_area(flt))
    assert close(loop_perimeter(exact), loop_perimeter(flt))
