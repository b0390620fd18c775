import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyratio.errors import CertificationError
from polyratio.exact import PRECISIONS, SqrtSum, exact_sqrt, sqrt_bounds

rationals = st.fractions(min_value=0, max_value=1000, max_denominator=10**6)


@given(rationals, st.sampled_from(PRECISIONS))
def test_sqrt_bounds_enclose(r, bits):
    lo, hi = sqrt_bounds(r, bits)
    assert lo * lo <= r <= hi * hi
    assert hi - lo <= F(1, r.denominator * 2**bits)


def test_exact_sqrt():
    assert exact_sqrt(F(9, 4)) == F(3, 2)
    assert exact_sqrt(F(2)) is None


def test_perfect_squares_fold_into_rational_part():
    s = SqrtSum.of([(1, 4), (2, F(1, 9)), (3, 1)])
    assert s.is_rational() and s.rational_value() == F(2) + F(2, 3) + 3


def test_like_radicands_merge():
    s = SqrtSum.sqrt(2) + SqrtSum.sqrt(2)
    assert s == SqrtSum.of([(2, 2)])
    assert (s - SqrtSum.of([(2, 2)])).terms == ()


def test_sqrt2_plus_sqrt3_vs_sqrt10():
    # 3.146... > 3.162...? no: sqrt2 + sqrt3 = 3.1462 < sqrt10 = 3.1623
    assert SqrtSum.sqrt(2) + SqrtSum.sqrt(3) < SqrtSum.sqrt(10)
    assert SqrtSum.sqrt(10) > SqrtSum.sqrt(2) + SqrtSum.sqrt(3)


def test_close_values_need_more_bits():
    # sqrt(n+1) - sqrt(n) - 1/(2 sqrt(n)) is tiny and negative for large n
    n = 10**30
    v = SqrtSum.sqrt(n + 1) - SqrtSum.sqrt(n) - SqrtSum.sqrt(F(1, 4 * n))
    assert v.sign() == -1


def test_equal_but_not_structural_raises():
    # sqrt(8) folds to 2*sqrt(2) only up to radicand normalisation, which we do not do
    v = SqrtSum.sqrt(8) - SqrtSum.of([(2, 2)])
    with pytest.raises(CertificationError):
        v.sign()


@given(st.lists(st.tuples(st.integers(-5, 5), rationals), max_size=6))
def test_float_matches_math(pairs):
    s = SqrtSum.of(pairs)
    expected = math.fsum(c * math.sqrt(r) for c, r in pairs)
    assert math.isclose(float(s), expected, abs_tol=1e-9)


def test_division_by_rational():
    s = SqrtSum.sqrt(2) * 3 / F(3, 2)
    assert s == SqrtSum.of([(2, 2)])


def test_mixed_with_float_rejected():
    with pytest.raises(TypeError):
        SqrtSum.sqrt(2).compare(1.5)
