"""Rational preperiodic points of polynomials over Q.

A preperiodic point z satisfies h(z) <= C(f)/(d-1), and any orbit point
above that height escapes: h(f(w)) >= d h(w) - C > h(w), so heights
increase forever.  Both facts come from the composition bound, which makes
membership decidable and the search over rationals of bounded height
complete.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from mpmath import iv

from .errors import BudgetExceeded
from .heights import (HeightInterval, _ends, _iv_from_fraction, _require_poly, canonical_height,
                      composition_bound, decimal_str, ivprec, naive_height_int)
from .ratfun import INF, RatFun, evaluate, point_str, to_expr

DEFAULT_BUDGET = 10 ** 6
MAX_ORBIT = 10_000


def default_budget() -> int:
    return int(os.environ.get("DYNFREE_BUDGET", DEFAULT_BUDGET))


def point_key(z):
    """Ordering of P^1(Q) by height, then |p|, then q, positive before negative."""
    if z is INF:
        return (1, 2, 0, 0)
    z = Fraction(z)
    p, q = z.numerator, z.denominator
    return (max(abs(p), q), abs(p), q, 0 if p >= 0 else 1)


def points_of_height(H: int):
    """Every reduced p/q with max(|p|, q) == H, in :func:`point_key` order."""
    if H == 1:
        return [Fraction(0), Fraction(1), Fraction(-1)]
    out = []
    for a in range(0, H + 1):
        qs = [H] if a < H else range(1, H + 1)
        for q in qs:
            if gcd(a, q) == 1:
                out.append(Fraction(a, q))
                if a:
                    out.append(Fraction(-a, q))
    return sorted(out, key=point_key)


def rationals_by_height(max_height: int):
    for H in range(1, max_height + 1):
        yield from points_of_height(H)


@dataclass(frozen=True)
class PrepEvidence:
    """Why a point was classified.

    kind "cycle": the orbit repeats, entering a cycle of ``period`` at step
    ``entry``.  kind "escape": the orbit point at ``step`` has height above
    the bound ``bound``; ``height`` encloses a positive canonical height.
    """

    kind: str
    entry: int | None = None
    period: int | None = None
    step: int | None = None
    bound: Fraction | None = None
    height: HeightInterval | None = None


def is_preperiodic(f: RatFun, z, max_steps: int = MAX_ORBIT):
    """(True, cycle evidence) or (False, escape evidence)."""
    _require_poly(f)
    if z is INF:
        return True, PrepEvidence("cycle", entry=0, period=1)
    bound = composition_bound(f).tail()
    cutoff = _height_cutoff(bound)
    verdict, k, info = _classify(f, Fraction(z), cutoff, max_steps)
    if verdict:
        return True, PrepEvidence("cycle", entry=k, period=info)
    height = canonical_height(f, z, k + 8, collapse_preperiodic=False)
    return False, PrepEvidence("escape", step=k, bound=bound, height=height)


def _classify(f: RatFun, z: Fraction, cutoff: int, max_steps: int):
    """(True, entry, period) on a cycle; (False, step, None) once the height
    of an orbit point exceeds ``cutoff`` >= exp(C'), which forces escape."""
    seen = {}
    w = z
    for k in range(max_steps + 1):
        if w in seen:
            return True, seen[w], k - seen[w]
        seen[w] = k
        if naive_height_int(w) > cutoff:
            return False, k, None
        w = evaluate(f, w)
    raise BudgetExceeded(f"orbit of {z} neither cycled nor escaped in {max_steps} steps")


def _height_cutoff(bound: Fraction) -> int:
    """An integer >= floor(exp(bound)): naive heights above it exceed ``bound``."""
    with ivprec(96):
        hi = _ends(iv.exp(_iv_from_fraction(bound)))[1]
    return floor(hi)


@dataclass(frozen=True)
class PrepReport:
    f: RatFun
    points: tuple
    bound_used: Fraction
    height_cutoff: int
    complete: bool

    def to_json(self) -> dict:
        return {
            "f": to_expr(self.f),
            "points": [point_str(z) for z in self.points],
            "bound_used": decimal_str(self.bound_used, 25, "up"),
            "height_cutoff": self.height_cutoff,
            "complete": self.complete,
        }


def rational_preperiodic_points(f: RatFun, bound_override=None, budget: int | None = None) -> PrepReport:
    """All rational preperiodic points of f, with infinity listed last.

    The search covers every p/q of naive height at most exp(bound); with the
    default bound C(f)/(d-1) the list is complete.  A smaller override, or a
    budget hit, gives a report with ``complete`` false.
    """
    _require_poly(f)
    required = composition_bound(f).tail()
    bound = required if bound_override is None else Fraction(bound_override)
    budget = default_budget() if budget is None else budget
    cutoff = _height_cutoff(bound)
    complete = bound >= required
    escape_cutoff = _height_cutoff(required)
    points, tested = [], 0
    for H in range(1, cutoff + 1):
        batch = points_of_height(H)
        if tested + len(batch) > budget:
            cutoff, complete = H - 1, False
            break
        tested += len(batch)
        points.extend(z for z in batch if _classify(f, z, escape_cutoff, MAX_ORBIT)[0])
    points.append(INF)
    return PrepReport(f, tuple(points), bound, cutoff, complete)


def prep_difference_witness(f: RatFun, g: RatFun):
    """Least rational point (by height) preperiodic for exactly one of f, g.

    None means no rational witness exists; it says nothing about algebraic
    preperiodic points.
    """
    a = set(rational_preperiodic_points(f).points)
    b = set(rational_preperiodic_points(g).points)
    diff = a ^ b
    if not diff:
        return None
    return min(diff, key=point_key)
