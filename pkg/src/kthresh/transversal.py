"""Enumeration of inclusion-minimal transversals (hitting sets) of a set family.

Sets and transversals are integer bitmasks.  The search branches on an unhit
set, excludes the elements already tried at that branch so every minimal
transversal is reached along exactly one path, and prunes any partial
solution containing an element without a private set (such an element can
never become necessary again).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BudgetExceeded

DEFAULT_BUDGET = 10**7


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def minimize_family(sets) -> list[int]:
    """Drop empty duplicates and every set that contains another set of the family."""
    uniq = sorted(set(sets), key=lambda s: (s.bit_count(), s))
    if uniq and uniq[0] == 0:
        raise ValueError("family contains the empty set; it has no transversal")
    kept: list[int] = []
    for s in uniq:
        if not any(t & s == t for t in kept):
            kept.append(s)
    return kept


@dataclass
class TransversalResult:
    count: int = 0
    min_size: int | None = None
    witnesses: list[int] = field(default_factory=list)
    visits: int = 0


def minimal_transversals(sets, *, cap: int | None = None, budget: int = DEFAULT_BUDGET) -> TransversalResult:
    """Count every minimal transversal of ``sets``; keep at most ``cap`` of them.

    The count is never truncated: a search larger than ``budget`` node visits
    raises :class:`BudgetExceeded` instead.
    """
    family = minimize_family(sets)
    res = TransversalResult()
    if not family:
        res.count, res.min_size = 1, 0
        res.witnesses.append(0)
        return res

    def has_private_sets(chosen: int) -> bool:
        need = chosen
        for s in family:
            h = s & chosen
            if h and h & (h - 1) == 0:
                need &= ~h
                if not need:
                    return True
        return not need

    def rec(chosen: int, excluded: int) -> None:
        res.visits += 1
        if res.visits > budget:
            raise BudgetExceeded(f"transversal search exceeded {budget} node visits")
        best = None
        for s in family:
            if not s & chosen:
                cand = s & ~excluded
                if not cand:
                    return
                if best is None or cand.bit_count() < best.bit_count():
                    best = cand
                    if best & (best - 1) == 0:
                        break
        if best is None:
            res.count += 1
            size = chosen.bit_count()
            if res.min_size is None or size < res.min_size:
                res.min_size = size
            if cap is None or len(res.witnesses) < cap:
                res.witnesses.append(chosen)
            return
        for e in _bits(best):
            nxt = chosen | e
            if has_private_sets(nxt):
                rec(nxt, excluded)
            excluded |= e

    rec(0, 0)
    return res


def is_transversal(T: int, sets) -> bool:
    return all(s & T for s in sets)
