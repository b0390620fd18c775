import math
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from polyratio.geom import Loop, Point

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def square(cx=0, cy=0, side=1, exact=True):
    h = F(side, 2) if exact else side / 2
    if exact:
        cx, cy = F(cx), F(cy)
    else:
        cx, cy = float(cx), float(cy)
    return Loop((Point(cx + h, cy + h), Point(cx - h, cy + h), Point(cx - h, cy - h), Point(cx + h, cy - h)))


@pytest.fixture
def unit_square():
    return square()


def close(a, b, tol=1e-9):
    return math.isclose(float(a), float(b), rel_tol=0, abs_tol=tol)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
