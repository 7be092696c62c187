import math

import pytest
from hypothesis import given, strategies as st

from conftest import SQUARE, TRIANGLE
from kthresh.classes import ClassSpec, enumerate_class, essential_bruteforce, is_polytopal
from kthresh.core import DegenerateError, GridFunction, GridSpec, PreconditionError, symmetry_images, symmetry_maps
from kthresh.teaching import (
    d_set,
    delta_region,
    essential_polytopal,
    is_teaching_polytopal,
    perimeter_bound_check,
    pick_check,
    singleton_essential,
    singleton_essential_count,
    vertices,
)

TRIANGLE_D = {(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (3, 1), (0, 2), (2, 2), (0, 3), (1, 3)}


def g(n, pts, d=2):
    return GridFunction.from_points(GridSpec(d, n), pts)


def test_d_set_examples(triangle):
    assert d_set(g(3, [(0, 0)])) == {(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)}
    assert d_set(triangle) == TRIANGLE_D
    assert d_set(GridFunction.one(GridSpec(2, 3))) == set()
    with pytest.raises(PreconditionError):
        d_set(GridFunction.zero(GridSpec(2, 3)))


def test_delta_region_examples(triangle):
    assert delta_region(triangle) == TRIANGLE_D
    assert delta_region(g(4, SQUARE)) == {(0, 1), (1, 1), (2, 1), (3, 1), (0, 2), (3, 2), (0, 3), (3, 3)}
    with pytest.raises(DegenerateError):
        delta_region(g(4, [(1, 1), (2, 2)]))


def test_essential_examples(triangle):
    rep = essential_polytopal(GridFunction.zero(GridSpec(2, 3)))
    assert rep.essential == frozenset(GridSpec(2, 3).points())
    for method in ("auto", "definitional"):
        rep = essential_polytopal(triangle, method=method)
        assert rep.essential == frozenset(triangle.grid.points()) - {(3, 2), (2, 3), (3, 3)}
        assert len(rep.essential) == 13 and rep.j_count == 1 and rep.is_unique_minimal
    sq = g(4, SQUARE)
    rep = essential_polytopal(sq)
    assert rep.essential_one == frozenset(SQUARE)
    assert rep.essential_zero == frozenset(delta_region(sq))
    assert len(rep.essential) == 12


def test_vertices_general_dimension():
    f = g(3, [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)], d=3)
    assert set(vertices(f)) == set(f.ones)
    f = g(3, [(0, 0, 0), (2, 0, 0), (1, 0, 0), (0, 2, 0)], d=3)
    assert set(vertices(f)) == {(0, 0, 0), (2, 0, 0), (0, 2, 0)}


def test_essential_three_dimensions_matches_bruteforce():
    cls = enumerate_class(ClassSpec.polytopal(GridSpec(3, 2)))
    for f in cls.functions():
        assert set(essential_polytopal(f).essential) == essential_bruteforce(f, cls)


def test_is_teaching_polytopal(triangle):
    S = essential_polytopal(triangle).essential
    assert is_teaching_polytopal(triangle, S)
    assert not is_teaching_polytopal(triangle, S - {(1, 1)})
    zero = GridFunction.zero(GridSpec(2, 3))
    pts = zero.grid.points()
    assert is_teaching_polytopal(zero, pts)
    assert not any(is_teaching_polytopal(zero, pts[:i] + pts[i + 1:]) for i in range(9))


@given(st.data())
def test_teaching_upward_closed(data):
    cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, 4)))
    f = GridFunction(cls.spec.grid, data.draw(st.sampled_from(sorted(cls.members))))
    T = set(essential_polytopal(f).essential)
    extra = data.draw(st.sets(st.sampled_from(f.grid.points())))
    assert is_teaching_polytopal(f, T | extra)


@given(st.data())
def test_symmetry_equivariance(data):
    cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, 4)))
    f = GridFunction(cls.spec.grid, data.draw(st.sampled_from(sorted(cls.members))))
    S = essential_polytopal(f).essential
    for s, h in zip(symmetry_maps(4), symmetry_images(f)):
        assert essential_polytopal(h).essential == frozenset(map(s, S))


@given(st.data())
def test_auto_matches_definitional(data):
    cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, 5)))
    f = GridFunction(cls.spec.grid, data.draw(st.sampled_from(sorted(cls.members))))
    assert essential_polytopal(f).essential == essential_polytopal(f, method="definitional").essential


def test_singleton_examples():
    assert singleton_essential(g(3, [(0, 0)]), 2) == {(0, 0), (1, 0), (0, 1), (1, 1), (1, 2), (2, 1)}
    assert singleton_essential(g(3, [(1, 1)]), 2) == set(GridSpec(2, 3).points())
    assert singleton_essential(g(2, [(0, 0, 0)], d=3), 2) == set(GridSpec(3, 2).points())
    with pytest.raises(PreconditionError):
        singleton_essential(g(3, [(0, 0), (1, 1)]), 2)
    with pytest.raises(PreconditionError):
        singleton_essential(g(3, [(0, 0)]), 1)


def test_singleton_growth():
    counts = [singleton_essential_count(GridSpec(2, n), (0, 0)) for n in (64, 128, 256, 512)]
    for n, c in zip((64, 128, 256, 512), counts):
        assert 0.4 <= c / n**2 <= 1.0
    for a, b in zip(counts, counts[1:]):
        assert 3.6 <= b / a <= 4.4
    f = g(40, [(7, 3)])
    assert singleton_essential_count(f.grid, (7, 3)) == len(singleton_essential(f, 3))


def test_perimeter_examples():
    b = perimeter_bound_check(g(4, SQUARE))
    assert b.lhs == 12
    assert b.rhs == pytest.approx(min(4, 4 + 2 / math.pi))
    assert b.lemma_holds
    b = perimeter_bound_check(g(4, [(1, 1), (2, 1), (1, 2)]))
    assert b.lhs == 13 and b.lemma_holds
    with pytest.raises(DegenerateError):
        perimeter_bound_check(g(4, [(1, 1), (2, 2)]))


def test_pick_check_on_enumerated_hulls():
    cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, 4)))
    assert all(pick_check(f) for f in cls.functions())


@given(st.lists(st.tuples(st.integers(0, 29), st.integers(0, 29)), min_size=3, max_size=6))
def test_extended_perimeter_lemma(pts):
    from kthresh.geometry import POLYGON, closure_mask, convex_hull_2d

    if convex_hull_2d(pts).kind != POLYGON:
        return
    grid = GridSpec(2, 30)
    f = GridFunction(grid, closure_mask(grid, pts))
    assert is_polytopal(f)
    assert perimeter_bound_check(f).lemma_holds
