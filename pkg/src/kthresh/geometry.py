"""Exact lattice geometry in the plane, plus hull membership in any dimension.

All set-valued answers are computed with integer orientation tests or exact
rational feasibility.  Only perimeters and angles are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import lp
from .core import DegenerateError, GridError, GridSpec, Point, PreconditionError

POINT, SEGMENT, POLYGON = "point", "segment", "polygon"


def cross(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Vertices of a lattice hull, counterclockwise for polygons."""

    vertices: tuple[Point, ...]

    @property
    def kind(self) -> str:
        k = len(self.vertices)
        return POINT if k == 1 else SEGMENT if k == 2 else POLYGON

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) == 1:
            return [(v[0], v[0])]
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane ``a1*x1 + a2*x2 <= a0`` with ``gcd(|a1|, |a2|) = 1``."""

    a1: int
    a2: int
    a0: int

    def __post_init__(self):
        if (self.a1, self.a2) == (0, 0):
            raise ValueError("degenerate halfplane normal (0, 0)")
        if gcd(self.a1, self.a2) != 1:
            raise ValueError(f"halfplane normal ({self.a1}, {self.a2}) is not primitive")

    @classmethod
    def through(cls, p: Sequence[int], q: Sequence[int]) -> Halfplane:
        """Halfplane bounded by line pq whose interior lies to the left of p -> q."""
        dx, dy = q[0] - p[0], q[1] - p[1]
        g = gcd(dx, dy)
        if g == 0:
            raise ValueError("line through coincident points")
        a1, a2 = dy // g, -dx // g
        return cls(a1, a2, a1 * p[0] + a2 * p[1])

    def value(self, x: Sequence[int]) -> int:
        return self.a1 * x[0] + self.a2 * x[1]

    def contains(self, x: Sequence[int]) -> bool:
        return self.value(x) <= self.a0

    def relaxed(self, by: int = 1) -> Halfplane:
        return Halfplane(self.a1, self.a2, self.a0 + by)

    def flipped(self) -> Halfplane:
        return Halfplane(-self.a1, -self.a2, -self.a0)


@dataclass(frozen=True)
class LatticeCounts:
    boundary: frozenset
    interior: frozenset
    twice_area: int


# -- hulls -------------------------------------------------------------------

def _row_extremes(points: Iterable[Sequence[int]]) -> list[Point]:
    """Leftmost and rightmost point of every row; only these can be hull vertices."""
    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    for p in points:
        x, y = p[0], p[1]
        if y not in lo:
            lo[y] = hi[y] = x
        elif x < lo[y]:
            lo[y] = x
        elif x > hi[y]:
            hi[y] = x
    out = {(lo[y], y) for y in lo}
    out.update((hi[y], y) for y in hi)
    return list(out)


def hull_vertices(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """Strict vertices of the convex hull, counterclockwise (Andrew's monotone chain)."""
    pts = sorted(_row_extremes(points))
    if not pts:
        raise PreconditionError("convex hull of an empty set")
    if len(pts) <= 2:
        return tuple(pts)
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return tuple(hull)


def convex_hull_2d(points: Iterable[Sequence[int]]) -> LatticePolygon:
    pts = [tuple(p) for p in points]
    if not pts:
        raise PreconditionError("convex hull of an empty set")
    if any(len(p) != 2 for p in pts):
        raise GridError("convex_hull_2d needs 2-dimensional points")
    return LatticePolygon(hull_vertices(pts))


def twice_area(vertices: Sequence[Sequence[int]]) -> int:
    """Shoelace formula; non-negative for counterclockwise input."""
    s = 0
    k = len(vertices)
    for i in range(k):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % k]
        s += x0 * y1 - x1 * y0
    return s


# -- membership --------------------------------------------------------------

def in_polygon_2d(x: Sequence[int], hull: Sequence[Sequence[int]]) -> bool:
    """Exact point-in-convex-hull test for a counterclockwise vertex list."""
    k = len(hull)
    if k == 1:
        return tuple(x) == tuple(hull[0])
    if k == 2:
        a, b = hull
        if cross(a, b, x) != 0:
            return False
        return min(a[0], b[0]) <= x[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= x[1] <= max(a[1], b[1])
    return all(cross(hull[i], hull[(i + 1) % k], x) >= 0 for i in range(k))


def point_in_hull(x: Sequence[int], points: Iterable[Sequence[int]]) -> bool:
    """True iff ``x`` lies in ``Conv(points)``, decided by exact rational feasibility."""
    pts = [tuple(p) for p in points]
    if not pts:
        return False
    d = len(x)
    if any(len(p) != d for p in pts):
        raise GridError("dimension mismatch in point_in_hull")
    return lp.in_convex_hull(tuple(x), pts)


def _segments_meet(p1, p2, q1, q2) -> bool:
    d1, d2 = cross(q1, q2, p1), cross(q1, q2, p2)
    d3, d4 = cross(p1, p2, q1), cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and in_polygon_2d(p1, (q1, q2)))
        or (d2 == 0 and in_polygon_2d(p2, (q1, q2)))
        or (d3 == 0 and in_polygon_2d(q1, (p1, p2)))
        or (d4 == 0 and in_polygon_2d(q2, (p1, p2)))
    )


def convex_hulls_meet_2d(P: Sequence[Point], Q: Sequence[Point]) -> bool:
    """Whether Conv(P) and Conv(Q) intersect (closed sets).

    Two planar convex sets meet iff one holds a vertex of the other or their
    boundaries cross, so vertex containment plus edge-pair tests suffice.
    """
    P, Q = hull_vertices(P), hull_vertices(Q)
    if any(in_polygon_2d(q, P) for q in Q) or any(in_polygon_2d(p, Q) for p in P):
        return True
    ep = LatticePolygon(tuple(P)).edges()
    eq = LatticePolygon(tuple(Q)).edges()
    return any(_segments_meet(a, b, c, e) for a, b in ep for c, e in eq)


# -- lattice counting ----------------------------------------------------------

def segment_lattice_count(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of lattice points on the closed segment ab."""
    g = 0
    for u, v in zip(a, b):
        g = gcd(g, abs(u - v))
    return g + 1


def segment_points(a: Sequence[int], b: Sequence[int]) -> list[Point]:
    g = segment_lattice_count(a, b) - 1
    if g == 0:
        return [tuple(a)]
    step = [(v - u) // g for u, v in zip(a, b)]
    return [tuple(u + t * s for u, s in zip(a, step)) for t in range(g + 1)]


def lattice_counts(poly: LatticePolygon) -> LatticeCounts:
    if poly.kind == POINT:
        raise DegenerateError("lattice counts of a single point are degenerate")
    boundary = set()
    for a, b in poly.edges():
        boundary.update(segment_points(a, b))
    interior = set()
    if poly.kind == POLYGON:
        xs = [v[0] for v in poly.vertices]
        ys = [v[1] for v in poly.vertices]
        verts = poly.vertices
        k = len(verts)
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                p = (x, y)
                if all(cross(verts[i], verts[(i + 1) % k], p) > 0 for i in range(k)):
                    interior.add(p)
    area2 = twice_area(poly.vertices) if poly.kind == POLYGON else 0
    if area2 > 0 and area2 != 2 * len(interior) + len(boundary) - 2:
        raise ArithmeticError(f"Pick identity violated for {poly.vertices}")
    return LatticeCounts(frozenset(boundary), frozenset(interior), area2)


def pick_consistent(poly: LatticePolygon) -> bool:
    c = lattice_counts(poly)
    return c.twice_area == 0 or c.twice_area == 2 * len(c.interior) + len(c.boundary) - 2


# -- edge systems ------------------------------------------------------------

def edge_system(poly: LatticePolygon) -> list[Halfplane]:
    """One normalized inequality per edge; a segment gets both orientations."""
    if poly.kind == POINT:
        raise DegenerateError("a single point has no edge inequalities")
    if poly.kind == SEGMENT:
        a, b = poly.vertices
        h = Halfplane.through(a, b)
        return [h, h.flipped()]
    # counterclockwise order puts the interior on the left of each directed edge
    return [Halfplane.through(a, b) for a, b in poly.edges()]


def edge_system_contains(poly: LatticePolygon, x: Sequence[int]) -> bool:
    """Sign-test oracle for hull membership built from the edge system alone."""
    if poly.kind == POINT:
        return tuple(x) == poly.vertices[0]
    if not all(h.contains(x) for h in edge_system(poly)):
        return False
    if poly.kind == SEGMENT:
        # the two inequalities only pin x to the carrier line
        a, b = poly.vertices
        t = (x[0] - a[0]) * (b[0] - a[0]) + (x[1] - a[1]) * (b[1] - a[1])
        return 0 <= t <= (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    return True


def clip_polygon(halfplanes: Sequence[Halfplane], bound: int) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the intersection of ``halfplanes`` with the box [-bound, bound]^2."""
    poly = [(Fraction(-bound), Fraction(-bound)), (Fraction(bound), Fraction(-bound)),
            (Fraction(bound), Fraction(bound)), (Fraction(-bound), Fraction(bound))]
    for h in halfplanes:
        out = []
        k = len(poly)
        for i in range(k):
            p, q = poly[i], poly[(i + 1) % k]
            vp = h.a1 * p[0] + h.a2 * p[1] - h.a0
            vq = h.a1 * q[0] + h.a2 * q[1] - h.a0
            if vp <= 0:
                out.append(p)
            if (vp < 0 < vq) or (vq < 0 < vp):
                t = vp / (vp - vq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        poly = out
        if not poly:
            break
    dedup = []
    for p in poly:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def perimeter(vertices: Sequence[Sequence]) -> float:
    k = len(vertices)
    return sum(
        math.hypot(float(vertices[(i + 1) % k][0] - vertices[i][0]), float(vertices[(i + 1) % k][1] - vertices[i][1]))
        for i in range(k)
    )


def vertex_angles(poly: LatticePolygon) -> list[float]:
    """Interior angle at each vertex, in radians."""
    v = poly.vertices
    k = len(v)
    out = []
    for i in range(k):
        p, c, q = v[i - 1], v[i], v[(i + 1) % k]
        ax, ay = p[0] - c[0], p[1] - c[1]
        bx, by = q[0] - c[0], q[1] - c[1]
        out.append(math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by))
    return out


def perimeter_and_min_angle(poly: LatticePolygon) -> tuple[float, float]:
    if poly.kind != POLYGON:
        raise DegenerateError(f"perimeter and angles need a polygon, got a {poly.kind}")
    return perimeter(poly.vertices), min(vertex_angles(poly))


# -- grid masks ----------------------------------------------------------------

TABLE_MAX_N = 8


@lru_cache(maxsize=None)
def _left_tables(n: int) -> list[list[int]]:
    """``T[i][j]`` = mask of grid points on or left of the directed line i -> j."""
    grid = GridSpec(2, n)
    pts = grid.points()
    T = [[0] * len(pts) for _ in pts]
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i == j:
                continue
            m = 0
            for k, x in enumerate(pts):
                if cross(p, q, x) >= 0:
                    m |= 1 << k
            T[i][j] = m
    return T


@lru_cache(maxsize=None)
def _coords(n: int) -> tuple[np.ndarray, np.ndarray]:
    g = np.arange(n * n, dtype=np.int64)
    return g // n, g % n


def bool_to_mask(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr.astype(bool), bitorder="little").tobytes(), "little")


def halfplanes_mask(grid: GridSpec, halfplanes: Sequence[Halfplane]) -> int:
    """Mask of grid points satisfying every inequality."""
    x1, x2 = _coords(grid.n)
    ok = np.ones(grid.size, dtype=bool)
    for h in halfplanes:
        ok &= h.a1 * x1 + h.a2 * x2 <= h.a0
    return bool_to_mask(ok)


def hull_mask(grid: GridSpec, vertices: Sequence[Point]) -> int:
    """Mask of grid points in the hull of ``vertices`` (counterclockwise, as from hull_vertices)."""
    k = len(vertices)
    if k == 1:
        return 1 << grid.index(vertices[0])
    if k == 2:
        return grid.mask_of(segment_points(*vertices))
    if grid.n <= TABLE_MAX_N:
        T = _left_tables(grid.n)
        idx = [grid.index(v) for v in vertices]
        m = grid.full_mask
        for i in range(k):
            m &= T[idx[i]][idx[(i + 1) % k]]
        return m
    return halfplanes_mask(grid, edge_system(LatticePolygon(tuple(vertices))))


def closure_mask(grid: GridSpec, points: Iterable[Point]) -> int:
    """Mask of ``Conv(points) & E_n^2``; 0 for no points."""
    pts = list(points)
    if not pts:
        return 0
    return hull_mask(grid, hull_vertices(pts))
