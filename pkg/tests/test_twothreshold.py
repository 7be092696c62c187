import pytest

from kthresh.classes import ClassSpec, enumerate_class, essential_bruteforce, is_teaching_bruteforce, is_threshold
from kthresh.core import GridFunction, GridSpec, PreconditionError
from kthresh.geometry import Halfplane, LatticePolygon, halfplanes_mask
from kthresh.twothreshold import (
    DefiningPair,
    crossing_free,
    defining_pairs,
    distinguishing_count,
    family_fn,
    g2_witness,
    parallel_gap,
    region_minus_segment_count,
    separation_line,
    theorem9_teaching_set,
    threshold_essential,
    totient_sum,
)


def g(n, pts):
    return GridFunction.from_points(GridSpec(2, n), pts)


def hp(n, *hs):
    grid = GridSpec(2, n)
    return GridFunction(grid, halfplanes_mask(grid, list(hs)))


def test_threshold_essential_examples():
    f = g(3, [(0, 0), (1, 0), (2, 0)])
    assert threshold_essential(f) == ({(0, 1), (2, 1)}, {(0, 0), (2, 0)})
    assert threshold_essential(g(2, [(0, 0)])) == ({(1, 0), (0, 1)}, {(0, 0)})
    inst = family_fn(21)
    assert threshold_essential(inst.f2) == ({(0, 15), (20, 0)}, {(17, 2), (1, 14)})


def test_threshold_essential_refusals():
    with pytest.raises(PreconditionError, match="constant"):
        threshold_essential(GridFunction.one(GridSpec(2, 3)))
    with pytest.raises(PreconditionError):
        threshold_essential(g(2, [(0, 0), (1, 1)]))
    with pytest.raises(PreconditionError):
        threshold_essential(GridFunction.from_points(GridSpec(3, 2), [(0, 0, 0)]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_flip_and_test_matches_class_bruteforce(n):
    cls = enumerate_class(ClassSpec.threshold(GridSpec(2, n)))
    for f in cls.functions():
        if f.is_constant():
            continue
        S0, S1 = threshold_essential(f)
        assert S0 | S1 == essential_bruteforce(f, cls)


def test_separation_line_examples():
    f = g(3, [(0, 0), (1, 0), (2, 0)])
    l1, l0 = separation_line(f, 1), separation_line(f, 0)
    assert l1.halfplane == Halfplane(0, 1, 0)
    assert l0.halfplane == Halfplane(0, -1, -1)
    assert l0.holds_for(f) and l1.holds_for(f)
    assert parallel_gap(l0, l1) == 0
    with pytest.raises(ValueError):
        separation_line(f, 2)


def test_separation_line_singleton_side():
    f = g(4, [(0, 0)])
    line = separation_line(f, 1)
    assert line.holds_for(f)
    assert (0, 0) in line.grid_points_on(f.grid)


def test_defining_pairs_square(square):
    cls = enumerate_class(ClassSpec.threshold(square.grid))
    pairs = defining_pairs(square, cls)
    a = hp(4, Halfplane(-2, -1, -4))
    b = hp(4, Halfplane(2, -1, 2))
    assert a.mask & b.mask == square.mask
    assert {(p.f1.mask, p.f2.mask) for p in pairs} >= {tuple(sorted((a.mask, b.mask)))}
    assert all(p.conjunction == square and is_threshold(p.f1) and is_threshold(p.f2) for p in pairs)


def test_defining_pairs_trivial():
    grid = GridSpec(2, 3)
    cls = enumerate_class(ClassSpec.threshold(grid))
    one = GridFunction.one(grid)
    assert any(p.f1 == one and p.f2 == one for p in defining_pairs(one, cls))
    f = g(3, [(0, 0), (1, 0)])
    pairs = defining_pairs(f, cls)
    supers = [m for m in cls.members if m & f.mask == f.mask]
    assert len(pairs) > 1
    for m in supers:
        assert any({p.f1.mask, p.f2.mask} == {f.mask, m} for p in pairs)
    with pytest.raises(PreconditionError):
        defining_pairs(f, enumerate_class(ClassSpec.polytopal(grid)))


def test_theorem9_family_instance():
    inst = family_fn(21)
    T = theorem9_teaching_set(inst.f, inst.pair)
    assert len(T) == 9
    assert inst.factor_essentials < T
    (extra,) = T - inst.factor_essentials
    assert inst.f(extra) == 1 and inst.f.grid.is_border(extra)


def test_theorem9_strip():
    # horizontal strip x2 = 1: each factor has a single essential 0-point row pair
    f1, f2 = hp(4, Halfplane(0, 1, 1)), hp(4, Halfplane(0, -1, -1))
    f = GridFunction(f1.grid, f1.mask & f2.mask)
    assert f.ones == [(0, 1), (1, 1), (2, 1), (3, 1)]
    pair = DefiningPair(f1, f2)
    assert crossing_free(f1, f2)
    T = theorem9_teaching_set(f, pair)
    assert len(T) <= 9
    assert is_teaching_bruteforce(f, T, enumerate_class(ClassSpec.kthreshold(f.grid, 2)))


def test_theorem9_singleton_branch():
    # f1 has a single essential 0-point, so no border point is added
    f1, f2 = hp(4, Halfplane(3, 2, 6)), hp(4, Halfplane(-2, -1, -3))
    f = GridFunction(f1.grid, f1.mask & f2.mask)
    assert f.ones == [(0, 3), (1, 1), (2, 0)]
    assert len(threshold_essential(f1)[0]) == 1 and len(threshold_essential(f2)[0]) == 2
    assert crossing_free(f1, f2)
    T = theorem9_teaching_set(f, DefiningPair(f1, f2))
    S0a, S1a = threshold_essential(f1)
    S0b, S1b = threshold_essential(f2)
    assert T == S0a | S1a | S0b | S1b
    assert len(T) <= 7
    assert is_teaching_bruteforce(f, T, enumerate_class(ClassSpec.kthreshold(f.grid, 2)))


def test_theorem9_preconditions():
    # pair defines the column x1 = 2, not the single interior point
    f1, f2 = hp(5, Halfplane(-1, 0, -2)), hp(5, Halfplane(1, 0, 2))
    interior = g(5, [(2, 2)])
    with pytest.raises(PreconditionError, match="does not define"):
        theorem9_teaching_set(interior, DefiningPair(f1, f2))
    with pytest.raises(PreconditionError, match="border"):
        theorem9_teaching_set(interior, DefiningPair(interior, interior))


def test_family_examples():
    inst = family_fn(21)
    assert inst.m == 5
    assert inst.s1_f2 == {(17, 2), (1, 14)}
    assert inst.region_R.vertices[0] in {(17, 2), (1, 14), (20, 20)}
    assert set(inst.region_R.vertices) == {(17, 2), (1, 14), (20, 20)}
    assert family_fn(24).m == 5
    with pytest.raises(PreconditionError):
        family_fn(20)


@pytest.mark.parametrize("n", range(21, 61))
def test_family_closed_forms(n):
    inst = family_fn(n)
    assert threshold_essential(inst.f1) == (set(inst.s0_f1), set(inst.s1_f1))
    assert threshold_essential(inst.f2) == (set(inst.s0_f2), set(inst.s1_f2))


def test_distinguishing_count():
    inst = family_fn(21)
    c = distinguishing_count(inst)
    assert c == 162
    assert c >= 156
    assert distinguishing_count(family_fn(41)) / c >= 3.5
    assert region_minus_segment_count(LatticePolygon(((3, 3),)), (3, 3), (3, 3)) == 0


def test_g2_witness():
    inst = family_fn(21)
    pair = g2_witness(inst)
    gfun = pair.conjunction
    assert is_threshold(pair.f1) and is_threshold(pair.f2)
    assert all(gfun(x) == inst.f(x) for x in inst.factor_essentials)
    assert gfun((17, 2)) == inst.f((17, 2)) == 1
    assert gfun != inst.f


def test_totient_sum():
    assert totient_sum(10) == 32
    assert totient_sum(1) == 1
    import math

    assert 0.99 <= totient_sum(10**5) / (3 / math.pi**2 * 1e10) <= 1.01
    with pytest.raises(PreconditionError):
        totient_sum(0)
