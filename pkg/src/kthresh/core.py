"""Grid domain E_n^d, {0,1}-valued functions on it, and the JSON file format.

A function is stored as the bitmask of its 1-points.  Bit ``i`` corresponds to
the ``i``-th point of the grid in row-major lexicographic order, so for
``d = 2`` the point ``(x1, x2)`` has index ``x1 * n + x2``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Point = tuple[int, ...]

MAX_GRID_POINTS = 2**32


class KThreshError(Exception):
    """Base class for domain errors raised by this package."""


class FormatError(KThreshError, ValueError):
    pass


class GridError(KThreshError, ValueError):
    pass


class PreconditionError(KThreshError, ValueError):
    pass


class DegenerateError(PreconditionError):
    """Raised when a hull is a point or segment where an area is required."""


class BudgetExceeded(KThreshError, RuntimeError):
    pass


class InvariantError(KThreshError, AssertionError):
    """A property guaranteed by the theory failed to hold on a computed object."""


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise GridError(f"dimension must be an integer >= 1, got {self.d!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise GridError(f"side length must be an integer >= 2, got {self.n!r}")
        if self.n ** self.d > MAX_GRID_POINTS:
            raise GridError(f"grid of {self.n}^{self.d} points exceeds the 2^32 cap")

    @property
    def size(self) -> int:
        return self.n ** self.d

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def points(self) -> list[Point]:
        """All grid points in index order."""
        return list(itertools.product(range(self.n), repeat=self.d))

    def check(self, x: Sequence[int]) -> Point:
        x = tuple(x)
        if len(x) != self.d:
            raise GridError(f"point {x} has arity {len(x)}, expected {self.d}")
        for c in x:
            if isinstance(c, bool) or not isinstance(c, int):
                raise GridError(f"coordinate {c!r} of {x} is not an integer")
            if not 0 <= c < self.n:
                raise GridError(f"coordinate {c} of {x} outside [0, {self.n - 1}]")
        return x

    def index(self, x: Sequence[int]) -> int:
        i = 0
        for c in self.check(x):
            i = i * self.n + c
        return i

    def point(self, i: int) -> Point:
        coords = []
        for _ in range(self.d):
            i, c = divmod(i, self.n)
            coords.append(c)
        return tuple(reversed(coords))

    def mask_of(self, points: Iterable[Sequence[int]]) -> int:
        m = 0
        for x in points:
            m |= 1 << self.index(x)
        return m

    def points_of(self, mask: int) -> list[Point]:
        """Points whose bits are set in ``mask``, in index (lexicographic) order."""
        out = []
        while mask:
            low = mask & -mask
            out.append(self.point(low.bit_length() - 1))
            mask ^= low
        return out

    def is_border(self, x: Sequence[int]) -> bool:
        return any(c == 0 or c == self.n - 1 for c in x)


@dataclass(frozen=True)
class GridFunction:
    """A {0,1}-valued function on a grid, stored as the mask of M_1(f)."""

    grid: GridSpec
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.grid.size:
            raise GridError("mask has bits outside the grid")

    @classmethod
    def from_points(cls, grid: GridSpec, ones: Iterable[Sequence[int]]) -> GridFunction:
        return cls(grid, grid.mask_of(ones))

    @classmethod
    def zero(cls, grid: GridSpec) -> GridFunction:
        return cls(grid, 0)

    @classmethod
    def one(cls, grid: GridSpec) -> GridFunction:
        return cls(grid, grid.full_mask)

    @cached_property
    def ones(self) -> list[Point]:
        return self.grid.points_of(self.mask)

    @cached_property
    def zeros(self) -> list[Point]:
        return self.grid.points_of(self.zero_mask)

    @property
    def zero_mask(self) -> int:
        return self.grid.full_mask & ~self.mask

    def __call__(self, x: Sequence[int]) -> int:
        return (self.mask >> self.grid.index(x)) & 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def is_constant(self) -> bool:
        return self.mask == 0 or self.mask == self.grid.full_mask


def flip(f: GridFunction, x: Sequence[int]) -> GridFunction:
    """The function that differs from ``f`` exactly at ``x``."""
    return GridFunction(f.grid, f.mask ^ (1 << f.grid.index(x)))


def popcount(mask: int) -> int:
    return mask.bit_count()


# -- serialization -----------------------------------------------------------

def _as_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def parse_function(text: str | bytes) -> GridFunction:
    """Parse the ``{"d": .., "n": .., "ones": [[..], ..]}`` document."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if set(doc) != {"d", "n", "ones"}:
        raise FormatError(f"expected exactly the keys d, n, ones; got {sorted(doc)}")
    d = _as_int(doc["d"], "d")
    n = _as_int(doc["n"], "n")
    try:
        grid = GridSpec(d, n)
    except GridError as exc:
        raise FormatError(str(exc)) from None
    ones = doc["ones"]
    if not isinstance(ones, list):
        raise FormatError('"ones" must be an array')
    for x in ones:
        if not isinstance(x, list):
            raise FormatError(f"point {x!r} must be an array")
    try:
        return GridFunction.from_points(grid, ones)
    except GridError as exc:
        raise FormatError(str(exc)) from None


def dump_function(f: GridFunction) -> str:
    """Canonical serialization; ``ones`` sorted lexicographically."""
    doc = {"d": f.grid.d, "n": f.grid.n, "ones": [list(x) for x in f.ones]}
    return json.dumps(doc)


# -- dihedral symmetries of the square grid -----------------------------------

def symmetry_maps(n: int) -> list:
    """The 8 maps of E_n^2 onto itself induced by the symmetries of the square."""
    m = n - 1
    return [
        lambda p: (p[0], p[1]),
        lambda p: (m - p[1], p[0]),
        lambda p: (m - p[0], m - p[1]),
        lambda p: (p[1], m - p[0]),
        lambda p: (m - p[0], p[1]),
        lambda p: (p[0], m - p[1]),
        lambda p: (p[1], p[0]),
        lambda p: (m - p[1], m - p[0]),
    ]


# position i of this list holds the index of the inverse of symmetry_maps()[i]
SYMMETRY_INVERSES = [0, 3, 2, 1, 4, 5, 6, 7]


def symmetry_images(f: GridFunction) -> list[GridFunction]:
    if f.grid.d != 2:
        raise GridError("symmetry images are only defined for d = 2")
    return [GridFunction.from_points(f.grid, map(s, f.ones)) for s in symmetry_maps(f.grid.n)]
