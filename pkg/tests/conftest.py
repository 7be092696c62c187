from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from kthresh.core import GridFunction, GridSpec

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("repo", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

SQUARE = [(1, 2), (1, 3), (2, 2), (2, 3)]
TRIANGLE = [(1, 1), (1, 2), (2, 1)]


@pytest.fixture
def square():
    return GridFunction.from_points(GridSpec(2, 4), SQUARE)


@pytest.fixture
def triangle():
    return GridFunction.from_points(GridSpec(2, 4), TRIANGLE)


def points(n, min_size=1, max_size=8):
    coord = st.integers(0, n - 1)
    return st.lists(st.tuples(coord, coord), min_size=min_size, max_size=max_size)


@st.composite
def planar_functions(draw, n_min=2, n_max=5):
    n = draw(st.integers(n_min, n_max))
    grid = GridSpec(2, n)
    return GridFunction(grid, draw(st.integers(0, grid.full_mask)))
