import itertools

from hypothesis import given, strategies as st

from conftest import points
from kthresh.geometry import convex_hull_2d, convex_hulls_meet_2d, edge_system_contains, in_polygon_2d
from kthresh.lp import feasible, hulls_intersect, in_convex_hull


def test_feasible_basic():
    assert feasible([[1, 1]], [2])
    assert not feasible([[1, 1]], [-1])
    assert feasible([[1, -1]], [-3])
    assert not feasible([[1, 0], [1, 0]], [1, 2])
    assert feasible([], [])
    assert feasible([[0, 0]], [0])


def test_spec_examples():
    square = [(0, 0), (2, 0), (0, 2), (2, 2)]
    assert in_convex_hull((1, 1), square)
    assert not in_convex_hull((3, 0), square)
    cube = list(itertools.product((0, 2), repeat=3))
    assert in_convex_hull((1, 1, 1), cube)
    assert not in_convex_hull((1, 1, 3), cube)
    assert not in_convex_hull((0, 0), [])


def test_degenerate_cycling_prone():
    # many collinear and repeated points exercise degenerate pivots
    pts = [(0, 0)] * 3 + [(1, 1), (2, 2), (3, 3), (3, 3)]
    assert in_convex_hull((2, 2), pts)
    assert not in_convex_hull((2, 1), pts)


@given(points(7, 1, 7), st.tuples(st.integers(-1, 7), st.integers(-1, 7)))
def test_membership_matches_sign_oracle(pts, x):
    poly = convex_hull_2d(pts)
    assert in_convex_hull(x, pts) == edge_system_contains(poly, x)
    assert in_convex_hull(x, pts) == in_polygon_2d(x, poly.vertices)


@given(points(6, 1, 5), points(6, 1, 5))
def test_hulls_intersect_matches_geometry(P, Q):
    assert hulls_intersect(P, Q) == convex_hulls_meet_2d(P, Q)


@given(points(6, 1, 6))
def test_every_input_point_in_hull(pts):
    assert all(in_convex_hull(p, pts) for p in pts)
