"""Essential points and the unique minimal teaching set in the polytopal class.

For f with nonempty M_1 the essential set w.r.t. T(d,n,*) is Vert(P(f)) plus
D(f), the 0-points x whose attachment Conv(P(f) + x) swallows no other
0-point.  In the plane with positive hull area, D(f) is also the set of
0-points gained by relaxing each edge inequality of P(f) by one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classes import ClassSpec
from .core import DegenerateError, GridFunction, GridSpec, Point, PreconditionError
from .geometry import (
    POLYGON,
    LatticePolygon,
    clip_polygon,
    closure_mask,
    convex_hull_2d,
    edge_system,
    halfplanes_mask,
    hull_mask,
    hull_vertices,
    lattice_counts,
    perimeter,
    perimeter_and_min_angle,
    point_in_hull,
    vertex_angles,
)


@dataclass(frozen=True)
class TeachingReport:
    cls: ClassSpec
    essential: frozenset
    essential_one: frozenset
    essential_zero: frozenset
    is_unique_minimal: bool
    sigma: int | None = None
    j_count: int | None = None


def vertices(f: GridFunction) -> list[Point]:
    """Vert(P(f)); counterclockwise for d = 2."""
    ones = f.ones
    if not ones:
        return []
    if f.grid.d == 2:
        return list(hull_vertices(ones))
    return [v for i, v in enumerate(ones) if not point_in_hull(v, ones[:i] + ones[i + 1:])]


def d_set(f: GridFunction) -> set[Point]:
    """D(f) by definition: 0-points x with Conv(P(f) + x) & M_0(f) = {x}."""
    if f.mask == 0:
        raise PreconditionError("D(f) needs a nonempty M_1(f)")
    verts = vertices(f)
    grid = f.grid
    zero_mask = f.zero_mask
    out = set()
    if grid.d == 2:
        for x in f.zeros:
            if closure_mask(grid, verts + [x]) & zero_mask == 1 << grid.index(x):
                out.add(x)
        return out
    zeros = f.zeros
    for x in zeros:
        pts = verts + [x]
        if not any(y != x and point_in_hull(y, pts) for y in zeros):
            out.add(x)
    return out


def hull_polygon(f: GridFunction) -> LatticePolygon:
    if f.grid.d != 2:
        raise PreconditionError("hull polygons are planar; d = 2 required")
    return convex_hull_2d(f.ones)


def extended_system(poly: LatticePolygon):
    """Edge inequalities of ``poly`` with each right-hand side raised by one."""
    return [h.relaxed(1) for h in edge_system(poly)]


def delta_region(f: GridFunction) -> set[Point]:
    """Grid points of P'(f) minus P(f), for f with a positive-area hull."""
    if f.grid.d != 2:
        raise PreconditionError("delta_region needs d = 2")
    if f.mask == 0:
        raise DegenerateError("delta_region needs a nonempty M_1(f)")
    poly = hull_polygon(f)
    if poly.kind != POLYGON:
        raise DegenerateError(f"delta_region needs positive hull area; the hull is a {poly.kind}")
    ext = halfplanes_mask(f.grid, extended_system(poly))
    inside = hull_mask(f.grid, poly.vertices)
    return set(f.grid.points_of(ext & ~inside))


def essential_polytopal(f: GridFunction, method: str = "auto") -> TeachingReport:
    """S(f, T(d,n,*)) = Vert(P(f)) + D(f), the unique minimal teaching set.

    ``method="definitional"`` always scans D(f) by its definition; ``"auto"``
    uses the relaxed edge system for planar hulls of positive area.
    """
    if method not in ("auto", "definitional"):
        raise ValueError(f"unknown method {method!r}")
    grid = f.grid
    if f.mask == 0:
        ess = frozenset(grid.points())
        return TeachingReport(ClassSpec.polytopal(grid), ess, frozenset(), ess, True, len(ess), 1)
    verts = vertices(f)
    if method == "auto" and grid.d == 2 and len(verts) >= 3:
        zeros = {x for x in delta_region(f) if not f(x)}
    else:
        zeros = d_set(f)
    ones = frozenset(verts)
    ess = ones | frozenset(zeros)
    return TeachingReport(ClassSpec.polytopal(grid), ess, ones, frozenset(zeros), True, len(ess), 1)


def is_teaching_polytopal(f: GridFunction, T: Iterable[Sequence[int]]) -> bool:
    """Teaching w.r.t. T(d,n,*) iff T covers the unique minimal teaching set."""
    T = {f.grid.check(x) for x in T}
    return essential_polytopal(f).essential <= T


def singleton_essential(f: GridFunction, k: int) -> set[Point]:
    """S(f, T(d,n,k)) for |M_1(f)| = 1: x' plus every x with gcd(|x - x'|) = 1."""
    if len(f) != 1:
        raise PreconditionError(f"need exactly one 1-point, got {len(f)}")
    if k < 2:
        raise PreconditionError("the singleton formula holds for k >= 2")
    if f.grid.d < 2:
        raise PreconditionError("the singleton formula holds for d >= 2")
    grid = f.grid
    (xp,) = f.ones
    axes = np.indices((grid.n,) * grid.d).reshape(grid.d, -1)
    diffs = np.abs(axes - np.array(xp).reshape(-1, 1))
    g = np.gcd.reduce(diffs, axis=0)
    hits = np.flatnonzero(g == 1)
    out = {tuple(int(c) for c in axes[:, i]) for i in hits}
    out.add(xp)
    return out


def singleton_essential_count(grid: GridSpec, xp: Sequence[int]) -> int:
    """|S(f, T(d,n,k))| for M_1(f) = {xp}, counted without materializing the set."""
    axes = np.indices((grid.n,) * grid.d).reshape(grid.d, -1)
    diffs = np.abs(axes - np.array(grid.check(xp)).reshape(-1, 1))
    return int(np.count_nonzero(np.gcd.reduce(diffs, axis=0) == 1)) + 1


@dataclass(frozen=True)
class PerimeterBound:
    lhs: int
    rhs: float
    ratio: float
    perimeter: float
    q_min: float
    extended_perimeter: float
    lemma_bound: float

    @property
    def lemma_holds(self) -> bool:
        return self.extended_perimeter <= self.lemma_bound + 1e-9 * max(1.0, self.lemma_bound)


def extended_polygon(poly: LatticePolygon):
    """Vertices of P'(f), the real polygon cut out by the relaxed edge system."""
    ext = extended_system(poly)
    span = max(abs(c) for v in poly.vertices for c in v) + 1
    # P' lies within 1/sin(q/2) of P, and the sharpest lattice angle in a box of
    # side s is bounded below by 1/(2 s^2); this box is therefore never active
    bound = 16 * span**3 + 16
    return clip_polygon(ext, bound)


def perimeter_bound_check(f: GridFunction) -> PerimeterBound:
    if f.grid.d != 2:
        raise PreconditionError("perimeter bound needs d = 2")
    poly = hull_polygon(f)
    if poly.kind != POLYGON:
        raise DegenerateError(f"perimeter bound needs a polygon, got a {poly.kind}")
    per, q_min = perimeter_and_min_angle(poly)
    lhs = len(essential_polytopal(f).essential)
    rhs = min(f.grid.n, per + 1.0 / q_min)
    ext_per = perimeter(extended_polygon(poly))
    lemma = per + 2.0 * sum(1.0 / math.tan(q / 2.0) for q in vertex_angles(poly))
    return PerimeterBound(lhs, rhs, lhs / rhs, per, q_min, ext_per, lemma)


def pick_check(f: GridFunction) -> bool:
    """Pick identity on P(f); True for hulls of zero area."""
    if f.grid.d != 2 or len(f) < 2:
        return True
    poly = hull_polygon(f)
    c = lattice_counts(poly)
    return c.twice_area == 0 or c.twice_area == 2 * len(c.interior) + len(c.boundary) - 2

