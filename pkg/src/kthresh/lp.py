"""Exact feasibility of ``A y = b, y >= 0`` over the rationals.

Phase I of the tableau simplex method with Bland's anti-cycling rule.  The
tableau is kept fraction-free (integer pivoting): the true tableau is the
integer matrix divided by a common positive denominator, and every update
divides exactly, so the answer is exact and no ``Fraction`` objects are built.
"""

from __future__ import annotations

from typing import Sequence


def feasible(A: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
    """Return True iff some ``y >= 0`` satisfies ``A y = b`` exactly."""
    m = len(A)
    if m == 0:
        return True
    k = len(A[0])
    rows = []
    for row, rhs in zip(A, b):
        if len(row) != k:
            raise ValueError("ragged constraint matrix")
        # negate rows with negative rhs so the artificial basis starts feasible
        s = -1 if rhs < 0 else 1
        rows.append([s * int(a) for a in row] + [s * int(rhs)])
    # artificial columns stay implicit: an artificial never re-enters the basis
    basis = [k + i for i in range(m)]
    # last row: reduced costs of the phase-I objective, rhs slot holds -objective
    cost = [-sum(r[j] for r in rows) for j in range(k + 1)]
    denom = 1

    while True:
        enter = next((j for j in range(k) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i, r in enumerate(rows):
            a = r[enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            lr = rows[leave]
            # compare r[k]/a against lr[k]/lr[enter]; both denominators positive
            lhs, rhs = r[k] * lr[enter], lr[k] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            raise ArithmeticError("phase I reported unbounded")
        prow = rows[leave]
        piv = prow[enter]
        for i, r in enumerate(rows):
            if i == leave:
                continue
            c = r[enter]
            rows[i] = [(v * piv - c * p) // denom for v, p in zip(r, prow)]
        c = cost[enter]
        cost = [(v * piv - c * p) // denom for v, p in zip(cost, prow)]
        denom = piv
        basis[leave] = enter
    return cost[k] == 0


def in_convex_hull(x: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """Exact test of ``x in Conv(points)`` via ``x = sum l_i p_i, l >= 0, sum l = 1``."""
    if not points:
        return False
    d = len(x)
    A = [[p[j] for p in points] for j in range(d)]
    A.append([1] * len(points))
    return feasible(A, list(x) + [1])


def hulls_intersect(P: Sequence[Sequence[int]], Q: Sequence[Sequence[int]]) -> bool:
    """Exact test of ``Conv(P) & Conv(Q) != {}`` as one feasibility problem."""
    if not P or not Q:
        return False
    d = len(P[0])
    A = [[p[j] for p in P] + [-q[j] for q in Q] for j in range(d)]
    A.append([1] * len(P) + [0] * len(Q))
    A.append([0] * len(P) + [1] * len(Q))
    return feasible(A, [0] * d + [1, 1])
