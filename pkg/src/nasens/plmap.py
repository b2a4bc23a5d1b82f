"""Exact self-maps of intervals and of the circle.

The workhorse is :class:`PLMap`, a continuous piecewise-linear map over
rational breakpoints.  :class:`HybridMap` additionally allows concave
quadratic pieces ``alpha*(x - r)*(s - x)``; evaluation and images of
intervals stay exact, but composition is kept symbolic as a
:class:`Composite`.  :class:`CircleMap` is the angle map ``t -> c*t (mod 1)``
on angle fractions, and :class:`ProductMap` acts factorwise on products.

Images of intervals are computed exactly with endpoint open/closed flags, so
``diam f(U)`` and intersection tests never need sampling.

For a PL map, having no zero-slope piece is equivalent to feeble openness
(every nonempty open set has an image with nonempty interior): a non-constant
affine piece maps any open subinterval onto an open interval, while a
constant piece collapses its interior to one point.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction

from ._rational import as_fraction, fmt, simplest_between
from .errors import DomainError, NotComparable, NotInjectiveError, ResourceError, SpaceMismatch
from .metric import HALF, Arc, Box, Circle, Interval, Product, Span

MAX_BREAKPOINTS = 10**6


# -- pieces ------------------------------------------------------------------


class AffinePiece:
    __slots__ = ("x0", "x1", "y0", "y1")

    def __init__(self, x0, x1, y0, y1):
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1

    @property
    def slope(self):
        return (self.y1 - self.y0) / (self.x1 - self.x0)

    @property
    def is_constant(self):
        return self.y0 == self.y1

    def value(self, x):
        if x == self.x0:
            return self.y0
        if x == self.x1:
            return self.y1
        return self.y0 + (x - self.x0) * (self.y1 - self.y0) / (self.x1 - self.x0)

    def turning_points(self):
        return ()

    def slope_range(self, a, b):
        s = self.slope
        return s, s

    def monotone_parts(self):
        return [(self.x0, self.x1)]

    def solve(self, y):
        return self.x0 + (y - self.y0) * (self.x1 - self.x0) / (self.y1 - self.y0)

    def point_with_value_in(self, ylo, yhi, a, b):
        """Simplest x in [a, b] with value in [ylo, yhi]; the piece is monotone there."""
        u, v = sorted((self.solve(ylo), self.solve(yhi)))
        return simplest_between(max(u, a), min(v, b))


class QuadraticPiece:
    """``alpha*(x - r)*(s - x)`` on [x0, x1]; concave for alpha > 0."""

    __slots__ = ("x0", "x1", "alpha", "r", "s")

    def __init__(self, x0, x1, alpha, r, s):
        self.x0, self.x1 = x0, x1
        self.alpha, self.r, self.s = as_fraction(alpha), as_fraction(r), as_fraction(s)
        if self.alpha == 0:
            raise ValueError("use an affine piece for alpha = 0")

    @property
    def y0(self):
        return self.value(self.x0)

    @property
    def y1(self):
        return self.value(self.x1)

    @property
    def vertex(self):
        return (self.r + self.s) / 2

    is_constant = False

    def value(self, x):
        return self.alpha * (x - self.r) * (self.s - x)

    def turning_points(self):
        v = self.vertex
        return (v,) if self.x0 < v < self.x1 else ()

    def slope_range(self, a, b):
        da = self.alpha * (self.r + self.s - 2 * a)
        db = self.alpha * (self.r + self.s - 2 * b)
        return min(da, db), max(da, db)

    def monotone_parts(self):
        v = self.vertex
        if self.x0 < v < self.x1:
            return [(self.x0, v), (v, self.x1)]
        return [(self.x0, self.x1)]

    def point_with_value_in(self, ylo, yhi, a, b):
        # bisection on a monotone stretch; every probe is evaluated exactly
        fa, fb = self.value(a), self.value(b)
        increasing = fb > fa
        lo, hi = a, b
        for _ in range(4000):
            mid = simplest_between(lo + (hi - lo) / 3, hi - (hi - lo) / 3)
            y = self.value(mid)
            if ylo <= y <= yhi:
                return mid
            if (y < ylo) == increasing:
                lo = mid
            else:
                hi = mid
        raise ResourceError("bisection on a quadratic piece did not converge")


def _image_from_candidates(value, cands, span):
    """Exact image of ``span`` for a function monotone between consecutive candidates."""
    if len(cands) == 1:
        y = value(cands[0])
        return Span(y, y, True, True)
    lo = hi = None
    lo_closed = hi_closed = False
    last = len(cands) - 2
    for i in range(len(cands) - 1):
        a, b = cands[i], cands[i + 1]
        ca = i > 0 or span.lo_closed
        cb = i < last or span.hi_closed
        va, vb = value(a), value(b)
        if va == vb:
            sub = (va, vb, True, True)
        elif va < vb:
            sub = (va, vb, ca, cb)
        else:
            sub = (vb, va, cb, ca)
        if lo is None or sub[0] < lo:
            lo, lo_closed = sub[0], sub[2]
        elif sub[0] == lo:
            lo_closed = lo_closed or sub[2]
        if hi is None or sub[1] > hi:
            hi, hi_closed = sub[1], sub[3]
        elif sub[1] == hi:
            hi_closed = hi_closed or sub[3]
    return Span(lo, hi, lo_closed, hi_closed)


class IntervalMap:
    """Common behaviour of continuous piecewise maps of an interval."""

    domain: Interval
    codomain: Interval

    def pieces(self):
        raise NotImplementedError

    def _starts(self):
        return [p.x0 for p in self.pieces()]

    def piece_at(self, x):
        pcs = self.pieces()
        i = bisect_right(self._starts(), x) - 1
        return pcs[min(max(i, 0), len(pcs) - 1)]

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        x = as_fraction(x)
        if not self.domain.lo <= x <= self.domain.hi:
            raise DomainError(f"{x} is outside the domain [{self.domain.lo}, {self.domain.hi}]")
        return self.piece_at(x).value(x)

    def candidates(self, lo, hi):
        pts = [lo]
        for p in self.pieces():
            if p.x1 <= lo or p.x0 >= hi:
                continue
            if p.x0 > lo:
                pts.append(p.x0)
            pts.extend(t for t in p.turning_points() if lo < t < hi)
        if hi != lo:
            pts.append(hi)
        return sorted(set(pts))

    def image(self, span):
        """Exact image of a (possibly half-open) subinterval of the domain."""
        if span.lo < self.domain.lo or span.hi > self.domain.hi:
            raise DomainError(f"{span} is not inside the domain")
        return _image_from_candidates(self.eval, self.candidates(span.lo, span.hi), span)

    def range(self):
        img = self.image(Span(self.domain.lo, self.domain.hi, True, True))
        return img.lo, img.hi

    def is_surjective(self, codomain=None):
        codomain = codomain or self.codomain
        return self.range() == (codomain.lo, codomain.hi)

    def is_feebly_open(self):
        return not any(p.is_constant for p in self.pieces())

    def slope_range(self, span):
        lo = hi = None
        for p in self.pieces():
            a, b = max(p.x0, span.lo), min(p.x1, span.hi)
            if a > b or (a == b and span.lo != span.hi):
                continue
            s0, s1 = p.slope_range(a, b)
            lo = s0 if lo is None else min(lo, s0)
            hi = s1 if hi is None else max(hi, s1)
        return lo, hi

    def monotone_parts(self, span):
        """(piece, a, b) stretches of ``span``'s closure on which the map is monotone."""
        out = []
        for p in self.pieces():
            for x0, x1 in p.monotone_parts():
                a, b = max(x0, span.lo), min(x1, span.hi)
                if a < b:
                    out.append((p, a, b))
        return out


class PLMap(IntervalMap):
    """Continuous piecewise-linear map through ``points`` = [(x0, y0), ..., (xm, ym)]."""

    __slots__ = ("domain", "codomain", "xs", "ys", "_pieces")

    def __init__(self, points, codomain=None, domain=None):
        pts = [(as_fraction(x), as_fraction(y)) for x, y in points]
        if len(pts) < 2:
            raise ValueError("a PL map needs at least two points")
        xs = tuple(p[0] for p in pts)
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.xs = xs
        self.ys = tuple(p[1] for p in pts)
        self.domain = domain or Interval(xs[0], xs[-1])
        if (self.domain.lo, self.domain.hi) != (xs[0], xs[-1]):
            raise ValueError("breakpoints must span the domain")
        self.codomain = codomain or self.domain
        if min(self.ys) < self.codomain.lo or max(self.ys) > self.codomain.hi:
            raise DomainError("values leave the codomain")
        self._pieces = None

    @classmethod
    def identity(cls, domain):
        return cls([(domain.lo, domain.lo), (domain.hi, domain.hi)])

    @property
    def points(self):
        return list(zip(self.xs, self.ys))

    def pieces(self):
        if self._pieces is None:
            self._pieces = [AffinePiece(self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1])
                            for i in range(len(self.xs) - 1)]
        return self._pieces

    def _starts(self):
        return self.xs[:-1]

    @property
    def slopes(self):
        return [p.slope for p in self.pieces()]

    def eval(self, x):
        x = as_fraction(x)
        xs = self.xs
        if not xs[0] <= x <= xs[-1]:
            raise DomainError(f"{x} is outside the domain [{xs[0]}, {xs[-1]}]")
        i = bisect_left(xs, x)
        if xs[i] == x:
            return self.ys[i]
        x0, x1, y0, y1 = xs[i - 1], xs[i], self.ys[i - 1], self.ys[i]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def image(self, span):
        xs = self.xs
        if span.lo < xs[0] or span.hi > xs[-1]:
            raise DomainError(f"{span} is not inside the domain")
        i, j = bisect_right(xs, span.lo), bisect_left(xs, span.hi)
        known = dict(zip(xs[i:j], self.ys[i:j]))
        known[span.lo] = self.eval(span.lo)
        known[span.hi] = self.eval(span.hi)
        cands = [span.lo, *xs[i:j], span.hi] if span.hi != span.lo else [span.lo]
        return _image_from_candidates(known.__getitem__, cands, span)

    def range(self):
        return min(self.ys), max(self.ys)

    def normalize(self):
        """Drop breakpoints where the two neighbouring pieces are collinear."""
        keep_x, keep_y = [self.xs[0]], [self.ys[0]]
        for i in range(1, len(self.xs) - 1):
            x0, y0 = keep_x[-1], keep_y[-1]
            x1, y1 = self.xs[i], self.ys[i]
            x2, y2 = self.xs[i + 1], self.ys[i + 1]
            if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
                keep_x.append(x1)
                keep_y.append(y1)
        keep_x.append(self.xs[-1])
        keep_y.append(self.ys[-1])
        out = PLMap.__new__(PLMap)
        out.xs, out.ys, out.domain, out.codomain, out._pieces = (
            tuple(keep_x), tuple(keep_y), self.domain, self.codomain, None)
        return out

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        return a.xs == b.xs and a.ys == b.ys

    def __hash__(self):
        n = self.normalize()
        return hash((n.xs, n.ys))

    def __repr__(self):
        if len(self.xs) > 6:
            return f"PLMap(<{len(self.xs)} breakpoints on [{self.xs[0]}, {self.xs[-1]}]>)"
        return "PLMap([" + ", ".join(f"({x}, {y})" for x, y in self.points) + "])"

    def compose(self, f, max_breakpoints=MAX_BREAKPOINTS):
        """Return ``self o f`` as an exact PL map."""
        return compose_pl(self, f, max_breakpoints)

    def inverse(self):
        slopes = self.slopes
        if all(s > 0 for s in slopes):
            pts = list(zip(self.ys, self.xs))
        elif all(s < 0 for s in slopes):
            pts = list(zip(reversed(self.ys), reversed(self.xs)))
        else:
            raise NotInjectiveError("map is not strictly monotone")
        return PLMap(pts, codomain=self.domain)

    def sup_distance(self, other):
        if not isinstance(other, PLMap):
            raise SpaceMismatch("sup_distance between PL maps needs two PL maps")
        if self.domain != other.domain:
            raise SpaceMismatch("maps have different domains")
        xs = sorted(set(self.xs) | set(other.xs))
        return max(abs(self.eval(x) - other.eval(x)) for x in xs)


def compose_pl(g, f, max_breakpoints=MAX_BREAKPOINTS):
    """Exact PL representation of ``g o f``."""
    lo, hi = f.range()
    if lo < g.domain.lo or hi > g.domain.hi:
        raise DomainError("image of the inner map escapes the outer map's domain")
    gx = g.xs
    xs, ys = [], []
    for i in range(len(f.xs) - 1):
        x0, x1, y0, y1 = f.xs[i], f.xs[i + 1], f.ys[i], f.ys[i + 1]
        xs.append(x0)
        ys.append(g.eval(y0))
        if y0 != y1:
            a, b = (y0, y1) if y0 < y1 else (y1, y0)
            inner = gx[bisect_right(gx, a):bisect_left(gx, b)]
            if y0 > y1:
                inner = reversed(inner)
            k = (x1 - x0) / (y1 - y0)
            for z in inner:
                xs.append(x0 + (z - y0) * k)
                ys.append(g.eval(z))
        if len(xs) > max_breakpoints:
            raise ResourceError(f"composition exceeds {max_breakpoints} breakpoints")
    xs.append(f.xs[-1])
    ys.append(g.eval(f.ys[-1]))
    out = PLMap.__new__(PLMap)
    out.xs, out.ys, out.domain, out.codomain, out._pieces = (
        tuple(xs), tuple(ys), f.domain, g.codomain, None)
    return out.normalize()


class HybridMap(IntervalMap):
    """Continuous map built from affine and concave-quadratic pieces."""

    def __init__(self, pieces, codomain=None):
        self._p = list(pieces)
        for a, b in zip(self._p, self._p[1:]):
            if a.x1 != b.x0:
                raise ValueError("pieces must tile the domain")
            if a.value(a.x1) != b.value(b.x0):
                raise ValueError(f"map is discontinuous at {a.x1}")
        self.domain = Interval(self._p[0].x0, self._p[-1].x1)
        self.codomain = codomain or self.domain
        lo, hi = self.range()
        if lo < self.codomain.lo or hi > self.codomain.hi:
            raise DomainError("values leave the codomain")

    def pieces(self):
        return self._p

    def __repr__(self):
        parts = []
        for p in self._p:
            if isinstance(p, QuadraticPiece):
                parts.append(f"{p.alpha}(x-{p.r})({p.s}-x) on [{p.x0},{p.x1}]")
            else:
                parts.append(f"affine ({p.x0},{p.y0})-({p.x1},{p.y1})")
        return "HybridMap(" + "; ".join(parts) + ")"


class Composite(IntervalMap):
    """Symbolic composition; ``maps[0]`` is applied first."""

    def __init__(self, maps):
        flat = []
        for m in maps:
            flat.extend(m.maps if isinstance(m, Composite) else [m])
        if not flat:
            raise ValueError("empty composite")
        self.maps = tuple(flat)
        self.domain = flat[0].domain
        self.codomain = flat[-1].codomain

    def eval(self, x):
        for m in self.maps:
            x = m.eval(x)
        return x

    def image(self, span):
        for m in self.maps:
            span = m.image(span)
        return span

    def range(self):
        img = self.image(Span(self.domain.lo, self.domain.hi, True, True))
        return img.lo, img.hi

    def is_feebly_open(self):
        return all(m.is_feebly_open() for m in self.maps)

    def pieces(self):
        raise NotComparable("a composite has no explicit piece list; materialize() it first")

    def materialize(self, max_breakpoints=MAX_BREAKPOINTS):
        """Exact PL map when every factor is PL."""
        if not all(isinstance(m, PLMap) for m in self.maps):
            raise NotComparable("composite contains non-PL pieces")
        out = self.maps[0]
        for m in self.maps[1:]:
            out = compose_pl(m, out, max_breakpoints)
        return out

    def __repr__(self):
        return f"Composite({len(self.maps)} maps)"


class CircleMap:
    """Angle map ``t -> c*t (mod 1)`` on angle fractions.

    Compositions multiply multipliers, i.e. angles are treated through their
    lifts; inside a system the cumulative multiplier is applied to the
    starting angle, never the reduced intermediate one.
    """

    __slots__ = ("multiplier",)
    domain = codomain = Circle()

    def __init__(self, multiplier):
        c = as_fraction(multiplier)
        if c <= 0:
            raise ValueError("multiplier must be positive")
        self.multiplier = c

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t):
        return (self.multiplier * as_fraction(t)) % 1

    def compose(self, inner):
        return CircleMap(self.multiplier * inner.multiplier)

    def image(self, region):
        return Arc(self.multiplier * region.start, self.multiplier * region.length)

    def is_feebly_open(self):
        return True

    def is_surjective(self, codomain=None):
        return self.multiplier >= 1

    def __eq__(self, other):
        return isinstance(other, CircleMap) and other.multiplier == self.multiplier

    def __hash__(self):
        return hash(("circle", self.multiplier))

    def __repr__(self):
        return f"CircleMap({self.multiplier})"


def circle_image_diameter(c, arc_):
    """Diameter in turns of the image of an arc under multiplier ``c``."""
    length = c.multiplier * arc_.length
    return HALF if length >= HALF else length


class ProductMap:
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(factors)

    def __call__(self, p):
        return self.eval(p)

    def eval(self, p):
        return tuple(f.eval(x) for f, x in zip(self.factors, p))

    def image(self, box):
        return Box(tuple(f.image(r) for f, r in zip(self.factors, box.factors)))

    def is_feebly_open(self):
        return all(f.is_feebly_open() for f in self.factors)

    def is_surjective(self, codomain=None):
        spaces = codomain.factors if codomain is not None else [None] * len(self.factors)
        return all(f.is_surjective(s) for f, s in zip(self.factors, spaces))

    def __eq__(self, other):
        return isinstance(other, ProductMap) and all(
            structurally_equal(a, b) for a, b in zip(self.factors, other.factors))

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "ProductMap(" + ", ".join(map(repr, self.factors)) + ")"


# -- generic operations ------------------------------------------------------


def identity_map(space):
    if isinstance(space, Interval):
        return PLMap.identity(space)
    if isinstance(space, Circle):
        return CircleMap(1)
    if isinstance(space, Product):
        return ProductMap(identity_map(s) for s in space.factors)
    raise SpaceMismatch(f"unknown space {space!r}")


def compose(g, f, materialize=True, max_breakpoints=MAX_BREAKPOINTS):
    """``g o f``.  PL pairs are composed exactly unless ``materialize`` is off."""
    if isinstance(f, CircleMap) and isinstance(g, CircleMap):
        return g.compose(f)
    if isinstance(f, ProductMap) and isinstance(g, ProductMap):
        return ProductMap(compose(a, b, materialize, max_breakpoints)
                          for a, b in zip(g.factors, f.factors))
    if isinstance(f, IntervalMap) and isinstance(g, IntervalMap):
        if materialize and isinstance(f, PLMap) and isinstance(g, PLMap):
            return compose_pl(g, f, max_breakpoints)
        if materialize:
            try:
                return Composite([f, g]).materialize(max_breakpoints)
            except NotComparable:
                pass
        return Composite([f, g])
    raise SpaceMismatch(f"cannot compose {g!r} with {f!r}")


def compose_sequence(maps, materialize=True, max_breakpoints=MAX_BREAKPOINTS):
    """Compose ``maps`` with ``maps[0]`` applied first."""
    maps = list(maps)
    if not maps:
        raise ValueError("empty sequence")
    if not materialize and isinstance(maps[0], IntervalMap):
        return maps[0] if len(maps) == 1 else Composite(maps)
    out = maps[0]
    for m in maps[1:]:
        out = compose(m, out, materialize, max_breakpoints)
    return out


def atoms(m):
    """The elementary maps a (possibly composite) interval map applies, in order."""
    return list(m.maps) if isinstance(m, Composite) else [m]


def inverse(f):
    return f.inverse()


def is_surjective(f, codomain=None):
    return f.is_surjective(codomain)


def is_feebly_open(f):
    return f.is_feebly_open()


def structurally_equal(a, b, max_breakpoints=MAX_BREAKPOINTS):
    """Exact structural equality after normalisation."""
    if isinstance(a, Composite):
        a = a.materialize(max_breakpoints)
    if isinstance(b, Composite):
        b = b.materialize(max_breakpoints)
    if isinstance(a, PLMap) and isinstance(b, PLMap):
        return a == b
    if isinstance(a, CircleMap) and isinstance(b, CircleMap):
        return a == b
    if isinstance(a, ProductMap) and isinstance(b, ProductMap):
        return len(a.factors) == len(b.factors) and a == b
    if a is b:
        return True
    raise NotComparable(f"no structural comparison between {type(a).__name__} and {type(b).__name__}")


def circle_sup_distance(f, g):
    """Sup over angles of the arc distance between ``f(t)`` and ``g(t)``, in turns."""
    gap = abs(f.multiplier - g.multiplier)
    return HALF if gap >= HALF else gap


def sup_distance(f, g, tol=Fraction(1, 2**40)):
    """Exact sup distance when available, otherwise a certified enclosure.

    PL and circle maps give a Fraction.  Products give the squared value.
    Maps with quadratic pieces give an :class:`~nasens.enclosure.Enclosure`
    (or an exact zero when both sides apply the same elementary maps).
    """
    if isinstance(f, CircleMap) and isinstance(g, CircleMap):
        return circle_sup_distance(f, g)
    if isinstance(f, ProductMap) and isinstance(g, ProductMap):
        from .enclosure import Enclosure
        total_lo = total_hi = Fraction(0)
        for a, b in zip(f.factors, g.factors):
            d = sup_distance(a, b, tol)
            lo, hi = (d.lo, d.hi) if isinstance(d, Enclosure) else (d, d)
            if isinstance(a, CircleMap) or isinstance(a, IntervalMap):
                lo, hi = lo * lo, hi * hi
            total_lo += lo
            total_hi += hi
        return total_lo if total_lo == total_hi else Enclosure(total_lo, total_hi)
    if isinstance(f, IntervalMap) and isinstance(g, IntervalMap):
        if f.domain != g.domain:
            raise SpaceMismatch("maps have different domains")
        fa, ga = atoms(f), atoms(g)
        if len(fa) == len(ga) and all(x is y for x, y in zip(fa, ga)):
            return Fraction(0)
        try:
            pf = f.materialize() if isinstance(f, Composite) else f
            pg = g.materialize() if isinstance(g, Composite) else g
        except NotComparable:
            pf = pg = None
        if isinstance(pf, PLMap) and isinstance(pg, PLMap):
            return pf.sup_distance(pg)
        from .enclosure import sup_distance_enclosure
        return sup_distance_enclosure(f, g, tol)
    raise SpaceMismatch(f"cannot compare {f!r} with {g!r}")


# -- JSON --------------------------------------------------------------------


def map_to_json(m):
    if isinstance(m, PLMap):
        return {"domain": [fmt(m.domain.lo), fmt(m.domain.hi)],
                "points": [[fmt(x), fmt(y)] for x, y in m.points]}
    if isinstance(m, CircleMap):
        return {"type": "circle", "multiplier": fmt(m.multiplier)}
    if isinstance(m, ProductMap):
        return {"type": "product", "factors": [map_to_json(f) for f in m.factors]}
    if isinstance(m, HybridMap):
        pieces = []
        for p in m.pieces():
            if isinstance(p, QuadraticPiece):
                pieces.append({"type": "quadratic", "interval": [fmt(p.x0), fmt(p.x1)],
                               "alpha": fmt(p.alpha), "roots": [fmt(p.r), fmt(p.s)]})
            else:
                pieces.append({"type": "affine", "points": [[fmt(p.x0), fmt(p.y0)],
                                                            [fmt(p.x1), fmt(p.y1)]]})
        return {"type": "hybrid", "domain": [fmt(m.domain.lo), fmt(m.domain.hi)], "pieces": pieces}
    if isinstance(m, Composite):
        return {"type": "composite", "maps": [map_to_json(x) for x in m.maps]}
    raise TypeError(f"cannot serialise {m!r}")


def map_from_json(doc):
    kind = doc.get("type", "pl")
    if kind == "pl":
        pts = [(as_fraction(x), as_fraction(y)) for x, y in doc["points"]]
        m = PLMap(pts, codomain=Interval(*doc["codomain"]) if "codomain" in doc else None)
        if "domain" in doc:
            lo, hi = (as_fraction(v) for v in doc["domain"])
            if (lo, hi) != (m.domain.lo, m.domain.hi):
                raise ValueError("points do not span the declared domain")
        return m
    if kind == "circle":
        return CircleMap(doc["multiplier"])
    if kind == "product":
        return ProductMap(map_from_json(d) for d in doc["factors"])
    if kind == "hybrid":
        pieces = []
        for p in doc["pieces"]:
            if p["type"] == "quadratic":
                x0, x1 = (as_fraction(v) for v in p["interval"])
                r, s = p["roots"]
                pieces.append(QuadraticPiece(x0, x1, p["alpha"], r, s))
            else:
                (x0, y0), (x1, y1) = p["points"]
                pieces.append(AffinePiece(*(as_fraction(v) for v in (x0, x1, y0, y1))))
        return HybridMap(pieces)
    if kind == "composite":
        return Composite([map_from_json(d) for d in doc["maps"]])
    raise ValueError(f"unknown map type {kind!r}")
