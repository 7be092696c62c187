"""Brute-force ground truth over small grids.

Classes are enumerated exhaustively as sets of bitmasks, so essential points
and teaching sets can be checked by mask lookup.  Minimal teaching sets are
the minimal transversals of the disagreement family.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from . import lp
from .core import (
    GridFunction,
    GridSpec,
    Point,
    PreconditionError,
    flip,
)
from .geometry import closure_mask, convex_hulls_meet_2d, hull_vertices, point_in_hull
from .transversal import DEFAULT_BUDGET, minimal_transversals

FILTER_ALL_MAX_POINTS = 16


@dataclass(frozen=True)
class ClassSpec:
    """Threshold (k = 1), k-threshold, or polytopal (k = None) functions on a grid."""

    grid: GridSpec
    k: int | None = None

    def __post_init__(self):
        if self.k is not None and (isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1):
            raise PreconditionError(f"k must be an integer >= 1, got {self.k!r}")

    @classmethod
    def threshold(cls, grid: GridSpec) -> ClassSpec:
        return cls(grid, 1)

    @classmethod
    def kthreshold(cls, grid: GridSpec, k: int) -> ClassSpec:
        return cls(grid, k)

    @classmethod
    def polytopal(cls, grid: GridSpec) -> ClassSpec:
        return cls(grid, None)

    @property
    def kind(self) -> str:
        if self.k is None:
            return "polytopal"
        return "threshold" if self.k == 1 else "kthreshold"

    def __str__(self) -> str:
        d, n = self.grid.d, self.grid.n
        if self.k is None:
            return f"T({d},{n},*)"
        if self.k == 1:
            return f"T({d},{n})"
        return f"T({d},{n},{self.k})"


# -- membership predicates ----------------------------------------------------

def is_threshold(f: GridFunction) -> bool:
    """True iff Conv(M_1) and Conv(M_0) are disjoint (exact)."""
    if f.is_constant():
        return True
    if f.grid.d == 2:
        return not convex_hulls_meet_2d(f.ones, f.zeros)
    if f.grid.d == 1:
        ones = [x[0] for x in f.ones]
        zeros = [x[0] for x in f.zeros]
        return max(ones) < min(zeros) or max(zeros) < min(ones)
    return not lp.hulls_intersect(f.ones, f.zeros)


def is_polytopal(f: GridFunction) -> bool:
    """True iff no 0-point lies in Conv(M_1)."""
    if f.mask == 0:
        return True
    if f.grid.d == 2:
        return closure_mask(f.grid, f.ones) == f.mask
    ones = f.ones
    return not any(point_in_hull(y, ones) for y in f.zeros)


# -- enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class EnumeratedClass:
    spec: ClassSpec
    members: frozenset

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(sorted(self.members), dtype=np.uint64)

    def __contains__(self, f) -> bool:
        mask = f.mask if isinstance(f, GridFunction) else f
        return mask in self.members

    def __len__(self) -> int:
        return len(self.members)

    def functions(self) -> list[GridFunction]:
        return [GridFunction(self.spec.grid, m) for m in sorted(self.members)]


def _threshold_masks_2d(grid: GridSpec) -> set[int]:
    """Every threshold dichotomy of E_n^2.

    A separating line can be moved until it passes through two grid points; the
    points then on the line split along it into a prefix and a suffix.  So the
    candidates are: for each line through two grid points and each side, the
    strict side plus any prefix or suffix of the on-line points.
    """
    n = grid.n
    pts = grid.points()
    xs = np.array([p[0] for p in pts], dtype=np.int64)
    ys = np.array([p[1] for p in pts], dtype=np.int64)
    weights = [1 << i for i in range(len(pts))]
    masks = {0, grid.full_mask}
    seen_lines = set()
    for p, q in itertools.combinations(pts, 2):
        dx, dy = q[0] - p[0], q[1] - p[1]
        g = gcd(dx, dy)
        dx, dy = dx // g, dy // g
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        a1, a2 = dy, -dx
        c = a1 * p[0] + a2 * p[1]
        if (a1, a2, c) in seen_lines:
            continue
        seen_lines.add((a1, a2, c))
        vals = a1 * xs + a2 * ys
        below = sum(w for w, v in zip(weights, vals < c) if v)
        above = sum(w for w, v in zip(weights, vals > c) if v)
        on = sorted((dx * x + dy * y, grid.index((x, y))) for x, y in pts if a1 * x + a2 * y == c)
        bits = [1 << i for _, i in on]
        for side in (below, above):
            acc = 0
            for b in [0] + bits:
                acc |= b
                masks.add(side | acc)
            acc = 0
            for b in [0] + bits[::-1]:
                acc |= b
                masks.add(side | acc)
    return masks


def _polytopal_masks_2d(grid: GridSpec) -> set[int]:
    """Convex lattice sets, grown by adding one point at a time and closing the hull."""
    start = [1 << i for i in range(grid.size)]
    seen = {0, *start}
    stack = list(start)
    allpts = grid.points()
    while stack:
        mask = stack.pop()
        verts = list(hull_vertices(grid.points_of(mask)))
        for i, x in enumerate(allpts):
            if mask >> i & 1:
                continue
            new = closure_mask(grid, verts + [x])
            if new not in seen:
                seen.add(new)
                stack.append(new)
    return seen


def _filter_all(grid: GridSpec, predicate: Callable[[GridFunction], bool]) -> set[int]:
    return {m for m in range(1 << grid.size) if predicate(GridFunction(grid, m))}


def _intersections(level: np.ndarray, base: np.ndarray) -> np.ndarray:
    return np.unique(np.concatenate([level & t for t in base] + [level]))


def filter_all(spec: ClassSpec) -> set[int]:
    """Independent membership filter over all 2^(n^d) functions (tiny grids only)."""
    if spec.grid.size > FILTER_ALL_MAX_POINTS:
        raise PreconditionError(f"filter-all needs at most {FILTER_ALL_MAX_POINTS} grid points")
    if spec.k == 1:
        return _filter_all(spec.grid, is_threshold)
    if spec.k is None:
        return _filter_all(spec.grid, is_polytopal)
    raise PreconditionError("no direct membership predicate for k-threshold with k >= 2")


@lru_cache(maxsize=None)
def enumerate_class(spec: ClassSpec) -> EnumeratedClass:
    grid = spec.grid
    d, n = grid.d, grid.n
    if spec.k is None:
        if d == 2 and n <= 5:
            masks = _polytopal_masks_2d(grid)
        elif grid.size <= FILTER_ALL_MAX_POINTS:
            masks = filter_all(spec)
        else:
            raise PreconditionError(f"cannot enumerate {spec}: supported for d = 2, n <= 5 or d = 3, n = 2")
        return EnumeratedClass(spec, frozenset(masks))

    if d != 2:
        if grid.size <= FILTER_ALL_MAX_POINTS and spec.k == 1:
            return EnumeratedClass(spec, frozenset(filter_all(spec)))
        raise PreconditionError(f"cannot enumerate {spec}: k-threshold enumeration needs d = 2")
    if spec.k <= 2 and n > 6:
        raise PreconditionError(f"cannot enumerate {spec}: n <= 6 required")
    if spec.k > 2 and n > 4:
        raise PreconditionError(f"cannot enumerate {spec}: n <= 4 required for k >= 3")

    if spec.k == 1:
        masks = _threshold_masks_2d(grid)
        bad = [m for m in masks if not is_threshold(GridFunction(grid, m))]
        if bad:
            raise AssertionError(f"threshold candidate failed separability: {bad[:3]}")
        return EnumeratedClass(spec, frozenset(masks))

    base = enumerate_class(ClassSpec.threshold(grid)).array
    level = enumerate_class(ClassSpec(grid, spec.k - 1)).array
    return EnumeratedClass(spec, frozenset(int(m) for m in _intersections(level, base)))


# -- brute-force essential points and teaching sets ----------------------------

def _require_member(f: GridFunction, cls: EnumeratedClass) -> None:
    if f.grid != cls.spec.grid:
        raise PreconditionError("function and class live on different grids")
    if f.mask not in cls.members:
        raise PreconditionError(f"function is not a member of {cls.spec}")


def essential_bruteforce(f: GridFunction, cls: EnumeratedClass) -> set[Point]:
    """Points x such that flipping f at x stays inside the class."""
    _require_member(f, cls)
    return {x for i, x in enumerate(f.grid.points()) if f.mask ^ (1 << i) in cls.members}


def essential_mask(mask: int, members: frozenset, size: int) -> int:
    out = 0
    for i in range(size):
        if mask ^ (1 << i) in members:
            out |= 1 << i
    return out


def is_teaching_bruteforce(f: GridFunction, T: Iterable[Sequence[int]], cls: EnumeratedClass) -> bool:
    """True iff no other class member agrees with f on every point of T."""
    _require_member(f, cls)
    tmask = np.uint64(f.grid.mask_of(T))
    diffs = cls.array ^ np.uint64(f.mask)
    return not bool(np.any((diffs != 0) & ((diffs & tmask) == 0)))


def disagreement_family(f: GridFunction, cls: EnumeratedClass) -> list[int]:
    """Inclusion-minimal sets {x : f(x) != g(x)} over members g != f."""
    from .transversal import minimize_family

    _require_member(f, cls)
    diffs = cls.array ^ np.uint64(f.mask)
    return minimize_family(int(d) for d in diffs[diffs != 0])


@dataclass(frozen=True)
class MinimalTeachingSets:
    j_count: int
    sigma: int
    witnesses: list


def minimal_teaching_sets(
    f: GridFunction,
    cls: EnumeratedClass,
    mode: str = "count",
    cap: int = 16,
    budget: int = DEFAULT_BUDGET,
) -> MinimalTeachingSets:
    """Count (J) and minimum size (sigma) of the minimal teaching sets of f.

    Teaching sets are exactly the transversals of the disagreement family.
    Singleton sets force their point into every transversal; the search then
    only has to cover the sets those forced points leave unhit.
    """
    if mode not in ("count", "enumerate"):
        raise ValueError(f"mode must be 'count' or 'enumerate', got {mode!r}")
    _require_member(f, cls)
    diffs = cls.array ^ np.uint64(f.mask)
    diffs = diffs[diffs != 0]
    single = diffs[(diffs & (diffs - np.uint64(1))) == 0]
    forced = int(np.bitwise_or.reduce(single)) if len(single) else 0
    rest = diffs[(diffs & np.uint64(forced)) == 0]
    res = minimal_transversals((int(d) for d in rest), cap=cap if mode == "enumerate" else 0, budget=budget)
    witnesses = [sorted(f.grid.points_of(forced | w)) for w in res.witnesses]
    return MinimalTeachingSets(res.count, forced.bit_count() + res.min_size, witnesses)


def teaching_dimension(cls: EnumeratedClass, budget: int = DEFAULT_BUDGET) -> tuple[int, GridFunction]:
    """sigma(C) = max over members of sigma(f, C), with a maximizing witness."""
    best = None
    for f in cls.functions():
        s = minimal_teaching_sets(f, cls, budget=budget).sigma
        if best is None or s > best[0]:
            best = (s, f)
    return best


# -- conjunction properties --------------------------------------------------

@dataclass
class ConjunctionReport:
    n: int
    pairs: int = 0
    unique_pairs: int = 0
    ones_checked: int = 0
    zeros_checked: int = 0
    support_checked: int = 0
    union_checked: int = 0
    violations: list = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []


def conjunction_property_suite(
    n: int,
    k: int = 2,
    essential_c: Callable[[int], int] | None = None,
    essential_ck: Callable[[int], int] | None = None,
) -> ConjunctionReport:
    """Check the essential-point inclusions for conjunctions of two threshold functions.

    ``essential_c`` / ``essential_ck`` map a mask to the mask of its essential
    points w.r.t. T(2,n) and T(2,n,2); they default to the definitional lookups
    and exist so a corrupted oracle can be injected as a negative control.
    """
    if k != 2:
        raise PreconditionError("the conjunction suite is implemented for k = 2")
    if n > 3:
        raise PreconditionError("the conjunction suite is limited to n <= 3")
    grid = GridSpec(2, n)
    C = enumerate_class(ClassSpec.threshold(grid))
    Ck = enumerate_class(ClassSpec.kthreshold(grid, 2))
    size = grid.size
    full = grid.full_mask
    if essential_c is None:
        essential_c = lambda m: essential_mask(m, C.members, size)  # noqa: E731
    if essential_ck is None:
        essential_ck = lambda m: essential_mask(m, Ck.members, size)  # noqa: E731
    Sc = {m: essential_c(m) for m in C.members}
    members = sorted(C.members)

    defining = defaultdict(set)
    for a, b in itertools.combinations_with_replacement(members, 2):
        defining[a & b].add((a, b))

    rep = ConjunctionReport(n)
    Sk_cache: dict[int, int] = {}
    for f1 in members:
        for f2 in members:
            f = f1 & f2
            rep.pairs += 1
            if f not in Sk_cache:
                Sk_cache[f] = essential_ck(f)
            Sf = Sk_cache[f]
            S1f, S0f = Sf & f, Sf & ~f & full
            for fi, fj in ((f1, f2), (f2, f1)):
                # S_1(f_i) & M_1(f) inside S_1(f)
                rep.ones_checked += 1
                if (Sc[fi] & fi & f) & ~S1f:
                    rep.violations.append(("ones-inclusion", f1, f2))
                # S_0(f_i) & M_1(f_j) inside S_0(f)
                rep.zeros_checked += 1
                if (Sc[fi] & ~fi & fj) & ~S0f:
                    rep.violations.append(("zeros-inclusion", f1, f2))
            if len(defining[f]) != 1:
                continue
            rep.unique_pairs += 1
            for fi, fj in ((f1, f2), (f2, f1)):
                rep.support_checked += 1
                if Sc[fi] & ~fj:
                    rep.violations.append(("factor-support", f1, f2))
            rep.union_checked += 1
            ones = (Sc[f1] & f1) | (Sc[f2] & f2)
            zeros = (Sc[f1] & ~f1) | (Sc[f2] & ~f2)
            if ones & ~S1f or zeros & full & ~S0f:
                rep.violations.append(("union-inclusion", f1, f2))
    return rep
