"""Verification sweeps: each returns a report with counts of checked cases and violations."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .classes import (
    ClassSpec,
    conjunction_property_suite,
    enumerate_class,
    essential_bruteforce,
    essential_mask,
    is_teaching_bruteforce,
    minimal_teaching_sets,
)
from .core import GridFunction, GridSpec, KThreshError, PreconditionError
from .geometry import (
    POLYGON,
    closure_mask,
    convex_hull_2d,
    edge_system_contains,
    hull_vertices,
    lattice_counts,
    point_in_hull,
)
from .teaching import (
    d_set,
    delta_region,
    essential_polytopal,
    hull_polygon,
    perimeter_bound_check,
    pick_check,
    singleton_essential,
    singleton_essential_count,
    vertices,
)
from .twothreshold import (
    DefiningPair,
    border_ones,
    crossing_free,
    distinguishing_count,
    family_fn,
    g2_witness,
    parallel_gap,
    separation_line,
    theorem9_teaching_set,
    threshold_essential,
    totient_sum,
)

RATIO_CEILING = 25.0


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, *item) -> None:
        self.violations.append(item)

    def lines(self) -> list[str]:
        out = [f"suite: {self.name}", f"checked: {self.checked}"]
        out += [f"{k}: {v}" for k, v in self.details.items()]
        out.append(f"violations: {len(self.violations)}")
        out += [f"  {v}" for v in self.violations[:10]]
        return out


def _sizes(n_max: int, lo: int, hi: int, what: str) -> range:
    if not lo <= n_max <= hi:
        raise PreconditionError(f"{what} supports n_max in [{lo}, {hi}], got {n_max}")
    return range(2, n_max + 1)


def _pick(rep: SuiteReport, f: GridFunction) -> None:
    rep.details["pick_checked"] = rep.details.get("pick_checked", 0) + 1
    if not pick_check(f):
        rep.fail("pick", f.mask)


def sf_suite(n_max: int = 4) -> SuiteReport:
    """Definitional essential set = Vert(P(f)) + D(f) = the unique minimal teaching set."""
    rep = SuiteReport("sf")
    for n in _sizes(n_max, 2, 5, "sf"):
        cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, n)))
        for f in cls.functions():
            rep.checked += 1
            brute = essential_bruteforce(f, cls)
            formula = set(essential_polytopal(f, method="definitional").essential)
            mts = minimal_teaching_sets(f, cls, mode="enumerate", cap=2)
            if brute != formula:
                rep.fail("formula", n, f.mask)
            if mts.j_count != 1 or set(mts.witnesses[0]) != brute:
                rep.fail("unique-minimal", n, f.mask, mts.j_count)
            _pick(rep, f)
    return rep


def deltap_suite(n_max: int = 5) -> SuiteReport:
    """D(f) = delta region & M_0(f) for every polytopal f with positive hull area."""
    rep = SuiteReport("deltap")
    skipped = 0
    for n in _sizes(n_max, 2, 5, "deltap"):
        cls = enumerate_class(ClassSpec.polytopal(GridSpec(2, n)))
        for f in cls.functions():
            if len(f) < 3 or hull_polygon(f).kind != POLYGON:
                skipped += 1
                continue
            rep.checked += 1
            if d_set(f) != {x for x in delta_region(f) if not f(x)}:
                rep.fail("deltap", n, f.mask)
            _pick(rep, f)
    rep.details["zero_area_skipped"] = skipped
    return rep


def statem9_suite(n_max: int = 5) -> SuiteReport:
    """The at-most-9-point set is teaching w.r.t. T(2,n,2) for every qualifying f and pair."""
    rep = SuiteReport("statem9")
    largest = 0
    for n in _sizes(n_max, 2, 5, "statem9"):
        grid = GridSpec(2, n)
        C = enumerate_class(ClassSpec.threshold(grid))
        K2 = enumerate_class(ClassSpec.kthreshold(grid, 2))
        factors = [f for f in C.functions() if not f.is_constant()]
        border_cache: dict[int, bool] = {}
        for i, f1 in enumerate(factors):
            for f2 in factors[i:]:
                f = GridFunction(grid, f1.mask & f2.mask)
                if f.mask not in border_cache:
                    border_cache[f.mask] = bool(border_ones(f))
                if not border_cache[f.mask] or not crossing_free(f1, f2):
                    continue
                rep.checked += 1
                T = theorem9_teaching_set(f, DefiningPair(f1, f2, True))
                largest = max(largest, len(T))
                if len(T) > 9:
                    rep.fail("size", n, f1.mask, f2.mask, len(T))
                if not is_teaching_bruteforce(f, T, K2):
                    rep.fail("not-teaching", n, f1.mask, f2.mask)
    rep.details["largest_set"] = largest
    return rep


def m1_suite(n_values=(3, 4), growth=(64, 128, 256, 512), totient_n: int = 10**5) -> SuiteReport:
    """Singleton formula against brute force, plus its quadratic growth checks."""
    rep = SuiteReport("m1")
    for n in n_values:
        grid = GridSpec(2, n)
        K2 = enumerate_class(ClassSpec.kthreshold(grid, 2))
        for x in grid.points():
            f = GridFunction.from_points(grid, [x])
            rep.checked += 1
            if singleton_essential(f, 2) != essential_bruteforce(f, K2):
                rep.fail("formula", n, x)
    counts = [singleton_essential_count(GridSpec(2, n), (0, 0)) for n in growth]
    ratios = [b / a for a, b in zip(counts, counts[1:])]
    rep.details["growth_counts"] = counts
    rep.details["growth_ratios"] = [round(r, 4) for r in ratios]
    for n, r in zip(growth[1:], ratios):
        rep.checked += 1
        if not 3.6 <= r <= 4.4:
            rep.fail("growth", n, r)
    tr = totient_sum(totient_n) / (3 / math.pi**2 * totient_n**2)
    rep.details["totient_ratio"] = round(tr, 6)
    rep.checked += 1
    if not 0.99 <= tr <= 1.01:
        rep.fail("totient", tr)
    return rep


def random_polytopal(rng: random.Random, n_max: int = 200) -> GridFunction:
    """A polytopal function with positive hull area: the lattice closure of a few random points."""
    while True:
        n = rng.randint(3, n_max)
        grid = GridSpec(2, n)
        pts = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(3, 8))]
        if convex_hull_2d(pts).kind == POLYGON:
            return GridFunction(grid, closure_mask(grid, pts))


def perimeter_suite(seed: int, samples: int = 1000, n_max: int = 200) -> SuiteReport:
    """Extended-perimeter inequality and the |S| / min(n, P + 1/q_min) ratio on random samples."""
    rep = SuiteReport("perimeter")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        f = random_polytopal(rng, n_max)
        rep.checked += 1
        b = perimeter_bound_check(f)
        worst = max(worst, b.ratio)
        if not b.lemma_holds:
            rep.fail("lemma", f.grid.n, vertices(f), b.extended_perimeter, b.lemma_bound)
        if not math.isfinite(b.ratio) or b.ratio > RATIO_CEILING:
            rep.fail("ratio", f.grid.n, vertices(f), b.ratio)
        _pick(rep, f)
    rep.details["seed"] = seed
    rep.details["max_ratio"] = round(worst, 6)
    rep.details["ratio_ceiling"] = RATIO_CEILING
    return rep


def seplines_suite(n_max: int = 6) -> SuiteReport:
    """Essential-side sizes and the three separation-line properties for every threshold f."""
    rep = SuiteReport("seplines")
    for n in _sizes(n_max, 2, 6, "seplines"):
        grid = GridSpec(2, n)
        for f in enumerate_class(ClassSpec.threshold(grid)).functions():
            if f.is_constant():
                continue
            rep.checked += 1
            S0, S1 = ess = threshold_essential(f)
            if len(S0) not in (1, 2) or len(S1) not in (1, 2) or len(S0) + len(S1) not in (3, 4):
                rep.fail("sizes", n, f.mask)
            lines = {nu: separation_line(f, nu, ess) for nu in (0, 1)}
            for nu, line in lines.items():
                S = (S0, S1)[nu]
                on = line.grid_points_on(grid)
                if not line.holds_for(f) or not S <= set(on):
                    rep.fail("line-through-essentials", n, f.mask, nu)
                if not set(hull_vertices(on)) <= S:
                    rep.fail("line-vertices-essential", n, f.mask, nu)
            if parallel_gap(lines[0], lines[1]) != 0:
                rep.fail("parallel-gap", n, f.mask)
    return rep


def conjunction_suite(n_max: int = 3) -> SuiteReport:
    rep = SuiteReport("conjunction")
    for n in _sizes(n_max, 2, 3, "conjunction"):
        r = conjunction_property_suite(n)
        rep.checked += r.ones_checked + r.zeros_checked + r.support_checked + r.union_checked
        rep.details[f"n={n}"] = f"pairs {r.pairs}, unique {r.unique_pairs}"
        rep.violations += r.violations
    return rep


def fit_exponent(xs, ys) -> float:
    """Slope of the least-squares line through (log x, log y)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def family_suite(n_lo: int = 21, n_hi: int = 60, fit_ns=(21, 29, 41, 57)) -> SuiteReport:
    """Sweep f^(n) over a range of n and fit the growth of the distinguishing counts."""
    if n_lo < 21 or n_hi < n_lo:
        raise PreconditionError("family sizes must satisfy 21 <= n_lo <= n_hi")
    rep = SuiteReport("family")
    counts = {}
    for n in range(n_lo, n_hi + 1):
        rep.checked += 1
        try:
            inst = family_fn(n)
            T = theorem9_teaching_set(inst.f, inst.pair)
            if len(T) > 9 or not inst.factor_essentials <= T:
                rep.fail("statem9", n, len(T))
            counts[n] = distinguishing_count(inst)
            g2_witness(inst)
        except KThreshError as exc:
            rep.fail("family", n, repr(exc))
    fit = [n for n in fit_ns if n in counts]
    if len(fit) >= 2:
        e = fit_exponent(fit, [counts[n] for n in fit])
        rep.details["fit_exponent"] = round(e, 4)
        rep.checked += 1
        if e < 1.9:
            rep.fail("exponent", e)
    if n_lo <= 21 <= n_hi and 21 in counts:
        rep.details["j_lower_bound_21"] = counts[21]
    rep.details["counts"] = {n: counts[n] for n in fit if n in counts}
    return rep


def propp_suite(n_max: int = 4) -> SuiteReport:
    """Essential sets w.r.t. T(2,n,|Vert|+1) and T(2,n,*) coincide for |M_1| > 1."""
    rep = SuiteReport("propp")
    for n in _sizes(n_max, 2, 4, "propp"):
        grid = GridSpec(2, n)
        cls = enumerate_class(ClassSpec.polytopal(grid))
        for f in cls.functions():
            if len(f) < 2:
                continue
            rep.checked += 1
            k = len(vertices(f)) + 1
            Kk = enumerate_class(ClassSpec.kthreshold(grid, k))
            a = essential_mask(f.mask, Kk.members, grid.size)
            b = essential_mask(f.mask, cls.members, grid.size)
            if a != b:
                rep.fail("propp", n, f.mask, k)
    return rep


def hull_oracle_suite(seed: int, samples: int = 10**5, n_max: int = 12) -> SuiteReport:
    """Exact LP hull membership against the edge-system sign oracle on random probes."""
    rep = SuiteReport("hull-oracle")
    rng = random.Random(seed)
    inside = 0
    for _ in range(samples):
        n = rng.randint(2, n_max)
        pts = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(1, 6))]
        x = (rng.randrange(n), rng.randrange(n))
        poly = convex_hull_2d(pts)
        rep.checked += 1
        a = point_in_hull(x, pts)
        inside += a
        if a != edge_system_contains(poly, x):
            rep.fail("mismatch", x, pts)
        if poly.kind == POLYGON:
            c = lattice_counts(poly)
            if c.twice_area != 2 * len(c.interior) + len(c.boundary) - 2:
                rep.fail("pick", pts)
    rep.details["seed"] = seed
    rep.details["inside"] = inside
    return rep


SUITES = {
    "sf": sf_suite,
    "deltap": deltap_suite,
    "statem9": statem9_suite,
    "m1": m1_suite,
    "perimeter": perimeter_suite,
    "seplines": seplines_suite,
    "conjunction": conjunction_suite,
    "family": family_suite,
}
