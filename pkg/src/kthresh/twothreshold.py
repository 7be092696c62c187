"""Separation lines of planar threshold functions and small teaching sets for their conjunctions.

Includes the at-most-9-point teaching set for 2-threshold functions whose
defining pair satisfies the crossing-free condition, and the family f^(n)
whose number of minimal teaching sets grows quadratically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .classes import ClassSpec, EnumeratedClass, enumerate_class, essential_mask, is_threshold
from .core import (
    GridFunction,
    GridSpec,
    InvariantError,
    Point,
    PreconditionError,
    flip,
)
from .geometry import (
    Halfplane,
    LatticePolygon,
    _coords,
    convex_hull_2d,
    halfplanes_mask,
    hull_vertices,
    lattice_counts,
    segment_lattice_count,
    segment_points,
)


def _check_planar_threshold(f: GridFunction) -> None:
    if f.grid.d != 2:
        raise PreconditionError("planar threshold functions only (d = 2)")
    if f.is_constant():
        raise PreconditionError(
            "constant functions are excluded: their essential set is a whole side, "
            "not the 3-4 point structure of non-constant threshold functions"
        )
    if not is_threshold(f):
        raise PreconditionError("function is not threshold")


def _adjacent_on_hull(points: list[Point], pair) -> bool:
    hull = list(hull_vertices(points))
    if not all(p in hull for p in pair):
        return False
    if len(hull) <= 2:
        return True
    i, j = hull.index(pair[0]), hull.index(pair[1])
    return (i - j) % len(hull) in (1, len(hull) - 1)


def threshold_essential(f: GridFunction) -> tuple[set[Point], set[Point]]:
    """(S_0, S_1) of a non-constant planar threshold function by flip-and-test."""
    S0, S1 = _threshold_essential(f)
    return set(S0), set(S1)


@lru_cache(maxsize=1 << 14)
def _threshold_essential(f: GridFunction) -> tuple[frozenset, frozenset]:
    _check_planar_threshold(f)
    result = []
    for side in (f.zeros, f.ones):
        # a point inside the hull of the rest of its side lands in both hulls
        # once flipped, so only hull vertices can be essential
        S = {x for x in hull_vertices(side) if is_threshold(flip(f, x))}
        if len(S) not in (1, 2):
            raise InvariantError(f"essential side of size {len(S)} for a threshold function")
        if len(S) == 2 and not _adjacent_on_hull(side, sorted(S)):
            raise InvariantError(f"essential points {sorted(S)} are not adjacent hull vertices")
        result.append(frozenset(S))
    S0, S1 = result
    if len(S0) + len(S1) not in (3, 4):
        raise InvariantError(f"|S| = {len(S0) + len(S1)} for a threshold function")
    return S0, S1


# -- separation lines ----------------------------------------------------------

@dataclass(frozen=True)
class SeparationLine:
    """``x in M_side(f)  <=>  a1 x1 + a2 x2 <= a0`` on every grid point."""

    halfplane: Halfplane
    side: int

    def holds_for(self, f: GridFunction) -> bool:
        x1, x2 = _coords(f.grid.n)
        h = self.halfplane
        inside = h.a1 * x1 + h.a2 * x2 <= h.a0
        target = np.array([(f.mask >> i) & 1 == self.side for i in range(f.grid.size)])
        return bool(np.array_equal(inside, target))

    def grid_points_on(self, grid: GridSpec) -> list[Point]:
        h = self.halfplane
        return [x for x in grid.points() if h.value(x) == h.a0]


def _oriented_through(p: Point, normal: tuple[int, int], f: GridFunction, side: int) -> SeparationLine | None:
    a1, a2 = normal
    for s in (1, -1):
        h = Halfplane(s * a1, s * a2, s * (a1 * p[0] + a2 * p[1]))
        line = SeparationLine(h, side)
        if line.holds_for(f):
            return line
    return None


def _primitive_directions(n: int):
    dirs = {
        (dx // gcd(dx, dy), dy // gcd(dx, dy))
        for dx in range(0, n)
        for dy in range(-(n - 1), n)
        if (dx, dy) != (0, 0) and (dx > 0 or dy > 0)
    }
    return sorted(dirs, key=lambda v: (abs(v[0]) + abs(v[1]), v))


def separation_line(f: GridFunction, side: int, essential=None) -> SeparationLine:
    """A ``side``-separation line of f through every point of S_side(f).

    With two essential points the line through them is the answer.  With one,
    the line is taken parallel to the opposite side's pair when there is one,
    otherwise the first primitive grid direction through the point that works.
    """
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    S0, S1 = essential if essential is not None else threshold_essential(f)
    S = sorted((S0, S1)[side])
    other = sorted((S1, S0)[side])
    if len(S) == 2:
        p, q = S
        dx, dy = q[0] - p[0], q[1] - p[1]
        g = gcd(dx, dy)
        line = _oriented_through(p, (dy // g, -dx // g), f, side)
        if line is None:
            raise InvariantError(f"line through {S} does not separate side {side}")
        return line
    (p,) = S
    candidates = []
    if len(other) == 2:
        dx, dy = other[1][0] - other[0][0], other[1][1] - other[0][1]
        g = gcd(dx, dy)
        candidates.append((dx // g, dy // g))
    candidates += _primitive_directions(f.grid.n)
    for dx, dy in candidates:
        line = _oriented_through(p, (dy, -dx), f, side)
        if line is not None:
            return line
    raise InvariantError(f"no {side}-separation line through {p}")


def parallel_gap(l0: SeparationLine, l1: SeparationLine) -> int | None:
    """Number of lattice lines strictly between two parallel separation lines.

    Returns None if the lines are not parallel.  ``l1`` bounds M_1 from above,
    ``l0`` bounds M_0 from above; with primitive normals the strip between them
    holds no lattice point iff the offsets differ by exactly one.
    """
    h0, h1 = l0.halfplane, l1.halfplane
    if h0.a1 * h1.a2 - h0.a2 * h1.a1 != 0:
        return None
    if (h0.a1, h0.a2) != (-h1.a1, -h1.a2):
        return None
    return -h0.a0 - h1.a0 - 1


# -- defining pairs and the 9-point teaching set --------------------------------

@dataclass(frozen=True)
class DefiningPair:
    f1: GridFunction
    f2: GridFunction
    satisfies_system: bool | None = None

    @property
    def conjunction(self) -> GridFunction:
        return GridFunction(self.f1.grid, self.f1.mask & self.f2.mask)


def _essential_points(f: GridFunction) -> set[Point]:
    S0, S1 = threshold_essential(f)
    return S0 | S1


def crossing_free(f1: GridFunction, f2: GridFunction) -> bool:
    """S(f1) & M_0(f2) = {} and S(f2) & M_0(f1) = {} (essentials w.r.t. threshold functions)."""
    return not any(f2(x) == 0 for x in _essential_points(f1)) and not any(
        f1(x) == 0 for x in _essential_points(f2)
    )


def defining_pairs(f: GridFunction, cls: EnumeratedClass) -> list[DefiningPair]:
    """Unordered pairs {f1, f2} of threshold functions with f1 & f2 = f."""
    if cls.spec != ClassSpec.threshold(f.grid):
        raise PreconditionError("defining_pairs needs the enumerated threshold class of f's grid")
    k2 = enumerate_class(ClassSpec.kthreshold(f.grid, 2))
    if f.mask not in k2.members:
        raise PreconditionError("function is not 2-threshold")
    size, full = f.grid.size, f.grid.full_mask
    supers = sorted(m for m in cls.members if m & f.mask == f.mask)
    out = []
    for a, b in itertools.combinations_with_replacement(supers, 2):
        if a & b != f.mask:
            continue
        Sa = essential_mask(a, cls.members, size)
        Sb = essential_mask(b, cls.members, size)
        ok = not (Sa & ~b & full) and not (Sb & ~a & full)
        out.append(DefiningPair(GridFunction(f.grid, a), GridFunction(f.grid, b), ok))
    return out


def border_ones(f: GridFunction) -> list[Point]:
    return [x for x in f.ones if f.grid.is_border(x)]


def theorem9_teaching_set(f: GridFunction, pair: DefiningPair) -> set[Point]:
    """Teaching set of size <= 9 for a 2-threshold f with a crossing-free defining pair.

    S(f1) + S(f2) suffices when either factor has a single essential 0-point;
    otherwise one border 1-point (the lexicographically smallest) is added.
    """
    if pair.conjunction != f:
        raise PreconditionError("pair does not define f")
    border = border_ones(f)
    if not border:
        raise PreconditionError("f has no 1-point on the border of the grid")
    S0a, S1a = threshold_essential(pair.f1)
    S0b, S1b = threshold_essential(pair.f2)
    if not crossing_free(pair.f1, pair.f2):
        raise PreconditionError("defining pair violates S(f1) & M0(f2) = S(f2) & M0(f1) = {}")
    T = S0a | S1a | S0b | S1b
    if len(S0a) == 2 and len(S0b) == 2:
        T.add(min(border))
    if len(T) > 9:
        raise InvariantError(f"teaching set of size {len(T)} > 9")
    return T


# -- the quadratic family f^(n) ------------------------------------------------

@dataclass(frozen=True)
class FamilyInstance:
    n: int
    m: int
    f: GridFunction
    f1: GridFunction
    f2: GridFunction
    s0_f1: frozenset
    s1_f1: frozenset
    s0_f2: frozenset
    s1_f2: frozenset
    region_R: LatticePolygon
    segment_L: tuple

    @property
    def pair(self) -> DefiningPair:
        return DefiningPair(self.f1, self.f2, True)

    @property
    def factor_essentials(self) -> frozenset:
        return self.s0_f1 | self.s1_f1 | self.s0_f2 | self.s1_f2


def family_fn(n: int) -> FamilyInstance:
    """f^(n) = [3x1 + 4x2 >= 25] & [3x1 + 4x2 <= 12m - 1] on E_n^2, m = (n-1) // 4."""
    if n < 21:
        raise PreconditionError("the family is defined for n >= 21")
    grid = GridSpec(2, n)
    m = (n - 1) // 4
    f1 = GridFunction(grid, halfplanes_mask(grid, [Halfplane(-3, -4, -25)]))
    f2 = GridFunction(grid, halfplanes_mask(grid, [Halfplane(3, 4, 12 * m - 1)]))
    closed = {
        "s0_f1": frozenset({(8, 0), (0, 6)}),
        "s1_f1": frozenset({(7, 1), (3, 4)}),
        "s0_f2": frozenset({(0, 3 * m), (4 * m, 0)}),
        "s1_f2": frozenset({(4 * m - 3, 2), (1, 3 * m - 1)}),
    }
    for factor, key in ((f1, "f1"), (f2, "f2")):
        S0, S1 = threshold_essential(factor)
        if S0 != closed[f"s0_{key}"] or S1 != closed[f"s1_{key}"]:
            raise InvariantError(f"closed-form essential points of {key} disagree with flip-and-test at n = {n}")
    v3, v4 = (4 * m - 3, 2), (1, 3 * m - 1)
    R = convex_hull_2d([v3, v4, (n - 1, n - 1)])
    f = GridFunction(grid, f1.mask & f2.mask)
    return FamilyInstance(n, m, f, f1, f2, region_R=R, segment_L=(v3, v4), **closed)


def region_minus_segment_count(R: LatticePolygon, a: Point, b: Point) -> int:
    """|(R \\ ab) & Z^2| from Pick-consistent boundary/interior counts of R."""
    if R.kind == "point":
        return 0
    c = lattice_counts(R)
    return len(c.boundary) + len(c.interior) - segment_lattice_count(a, b)


def distinguishing_points(inst: FamilyInstance) -> set[Point]:
    c = lattice_counts(inst.region_R)
    return set(c.boundary | c.interior) - set(segment_points(*inst.segment_L))


def distinguishing_count(inst: FamilyInstance) -> int:
    """Lattice points of the triangle R(n) off the segment L(n); each separates f^(n) from G_2."""
    count = region_minus_segment_count(inst.region_R, *inst.segment_L)
    pts = distinguishing_points(inst)
    if len(pts) != count:
        raise InvariantError("explicit point set disagrees with the lattice count")
    grid = inst.f.grid
    for x in pts:
        grid.check(x)
        if inst.f(x):
            raise InvariantError(f"distinguishing point {x} is a 1-point of f^(n)")
    m, n = inst.m, inst.n
    area2 = abs((m - 1) * (12 * m - 7 * n + 6))
    if lattice_counts(inst.region_R).twice_area != area2:
        raise InvariantError("area of R(n) disagrees with the closed form")
    if 2 * count < area2 - 2 * (m + 1):
        raise InvariantError("distinguishing count below the area lower bound")
    return count


def _cross_threshold(p: Point, q: Point, ones, grid: GridSpec) -> GridFunction:
    """Threshold function whose closed 0-side is bounded by line pq and whose 1-side holds ``ones``."""
    h = Halfplane.through(p, q)
    if all(h.value(x) < h.a0 for x in ones):
        h = h.flipped()
    if not all(h.value(x) > h.a0 for x in ones):
        raise InvariantError(f"points {sorted(ones)} straddle the line through {p}, {q}")
    return GridFunction(grid, halfplanes_mask(grid, [h.flipped().relaxed(-1)]))


def g2_witness(inst: FamilyInstance) -> DefiningPair:
    """An explicit g = g1 & g2 agreeing with f^(n) on S(f1) + S(f2) yet differing on R(n) minus L(n).

    g1 cuts along the line through u1 = (8, 0) and v2 = (4m, 0); g2 along the line
    through u2 = (0, 6) and v1 = (0, 3m).
    """
    grid = inst.f.grid
    u1, u2 = (8, 0), (0, 6)
    v1, v2 = (0, 3 * inst.m), (4 * inst.m, 0)
    ones = inst.s1_f1 | inst.s1_f2
    g1 = _cross_threshold(u1, v2, ones, grid)
    g2 = _cross_threshold(u2, v1, ones, grid)
    pair = DefiningPair(g1, g2)
    g = pair.conjunction
    for x in inst.factor_essentials:
        if g(x) != inst.f(x):
            raise InvariantError(f"witness disagrees with f^(n) at essential point {x}")
    if g1(u1) or g1(v2) or g2(u2) or g2(v1):
        raise InvariantError("witness does not put the crossed pairs on its 0-sides")
    region = distinguishing_points(inst)
    for x in region:
        if g(x) != 1 or inst.f(x) != 0:
            raise InvariantError(f"witness fails to be separated from f^(n) at {x}")
    if g == inst.f:
        raise InvariantError("witness coincides with f^(n)")
    return pair


# -- totients ------------------------------------------------------------------

def totient_sum(n: int) -> int:
    """Sum of Euler's phi(i) for i = 1..n, by a linear sieve."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    phi = [0] * (n + 1)
    phi[1] = 1
    primes: list[int] = []
    for i in range(2, n + 1):
        if phi[i] == 0:
            phi[i] = i - 1
            primes.append(i)
        for p in primes:
            ip = i * p
            if ip > n:
                break
            if i % p == 0:
                phi[ip] = phi[i] * p
                break
            phi[ip] = phi[i] * (p - 1)
    return sum(phi)
