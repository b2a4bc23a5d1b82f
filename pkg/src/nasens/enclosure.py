"""Certified enclosures of ``sup |f - g|`` for maps with quadratic pieces.

Composites that contain a quadratic piece cannot be flattened into a PL map,
so their sup distance is bracketed by branch and bound over subintervals of
the domain.  Each box gets two rigorous upper bounds on ``|f - g|``: the
natural extension (exact images of the box under both maps) and a mean-value
form built from chain-rule slope enclosures.  Exact evaluations at probe
points give the lower bound.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from ._rational import fmt, simplest_between
from .metric import Span


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction
    converged: bool = True

    @property
    def width(self):
        return self.hi - self.lo

    def __contains__(self, value):
        return self.lo <= value <= self.hi

    def to_json(self):
        return {"lo": fmt(self.lo), "hi": fmt(self.hi), "converged": self.converged}


def _slope_enclosure(m, span):
    """Interval containing every difference quotient of ``m`` over ``span``."""
    from .plmap import atoms

    lo = hi = Fraction(1)
    for a in atoms(m):
        s0, s1 = a.slope_range(span)
        prods = (lo * s0, lo * s1, hi * s0, hi * s1)
        lo, hi = min(prods), max(prods)
        span = a.image(span)
        if span.lo == span.hi:
            return Fraction(0), Fraction(0)
    return lo, hi


def _box_upper(f, g, a, b, gap_mid):
    box = Span(a, b, True, True)
    fi, gi = f.image(box), g.image(box)
    natural = max(fi.hi - gi.lo, gi.hi - fi.lo)
    f0, f1 = _slope_enclosure(f, box)
    g0, g1 = _slope_enclosure(g, box)
    slope = max(abs(f0 - g1), abs(f1 - g0))
    mean_value = gap_mid + slope * (b - a) / 2
    return min(natural, mean_value)


def sup_distance_enclosure(f, g, tol=Fraction(1, 2**40), budget=20000):
    """Bracket ``sup |f(x) - g(x)|`` over the common domain to width ``tol``."""
    lo_x, hi_x = f.domain.lo, f.domain.hi

    def gap(x):
        return abs(f.eval(x) - g.eval(x))

    best = max(gap(lo_x), gap(hi_x))
    heap = []

    def push(a, b):
        nonlocal best
        mid = simplest_between(a + (b - a) / 3, b - (b - a) / 3)
        gm = gap(mid)
        best = max(best, gm)
        upper = _box_upper(f, g, a, b, gm)
        if upper > best:
            heapq.heappush(heap, (-upper, a, b, mid))

    push(lo_x, hi_x)
    boxes = 1
    while heap:
        top = -heap[0][0]
        if top - best <= tol:
            return Enclosure(best, max(top, best))
        if boxes >= budget:
            return Enclosure(best, top, converged=False)
        _, a, b, mid = heapq.heappop(heap)
        push(a, mid)
        push(mid, b)
        boxes += 2
    return Enclosure(best, best)
