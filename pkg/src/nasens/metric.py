"""Compact metric spaces used by the library and their open regions.

Three kinds of space are supported:

* ``Interval(lo, hi)`` with the Euclidean metric,
* ``Circle()`` with arc length measured in *turns* (a full turn is 1, so the
  largest possible distance is 1/2; multiply by 2*pi for radians),
* ``Product(factors)`` with the root-sum-of-squares metric.

Everything is exact.  Because the product metric needs a square root, the
public :func:`distance` returns the *squared* value for product spaces, and all
threshold tests inside the library compare squared distances against squared
thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._rational import as_fraction, fmt
from .errors import DomainError, SpaceMismatch

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self):
        return self.hi - self.lo


@dataclass(frozen=True)
class Circle:
    pass


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if len(factors) < 2:
            raise ValueError("a product space needs at least two factors")
        object.__setattr__(self, "factors", factors)


UNIT = Interval(0, 1)


# -- regions -----------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    """A subinterval of an interval space with open/closed endpoint flags.

    Open regions are ``Span(a, b)`` with ``a < b``; images of regions can be
    half-open or a degenerate closed point ``Span(c, c, True, True)``.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty span {self}")

    @property
    def diameter(self):
        return self.hi - self.lo

    def contains(self, x):
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def intersects(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo < hi:
            return True
        if lo > hi:
            return False
        return self.contains(lo) and other.contains(lo)

    def closure(self):
        return Span(self.lo, self.hi, True, True)

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


@dataclass(frozen=True)
class Arc:
    """An open arc of the circle, ``start`` in [0, 1) and ``length`` in turns.

    A length of at least 1 covers the whole circle (minus at most one point).
    """

    start: Fraction
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "start", as_fraction(self.start) % 1)
        object.__setattr__(self, "length", as_fraction(self.length))
        if self.length <= 0:
            raise ValueError("arc length must be positive")

    @property
    def full(self):
        return self.length >= 1

    @property
    def diameter(self):
        return HALF if self.length >= HALF else self.length

    def contains(self, t):
        if self.length > 1:
            return True
        gap = (as_fraction(t) - self.start) % 1
        return 0 < gap < self.length

    def intersects(self, other):
        if self.full or other.full:
            return True
        gap = (other.start - self.start) % 1
        return gap < self.length or gap + other.length > 1

    def __str__(self):
        return f"arc({self.start}, +{self.length})"


@dataclass(frozen=True)
class Box:
    """Product of factor regions."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


def open_interval(a, b):
    return Span(a, b)


def arc(start, length):
    """Open arc that must not wrap past angle 0 (start + length <= 1)."""
    a = Arc(start, length)
    if a.start + a.length > 1:
        raise ValueError("regions on the circle must not wrap past angle 0; split the arc")
    return a


# -- points and distances ----------------------------------------------------


def check_point(space, p):
    """Validate and normalise a point of ``space``; returns the canonical value."""
    if isinstance(space, Interval):
        if isinstance(p, tuple):
            raise SpaceMismatch("interval points are single rationals")
        p = as_fraction(p)
        if not space.lo <= p <= space.hi:
            raise DomainError(f"{p} is outside [{space.lo}, {space.hi}]")
        return p
    if isinstance(space, Circle):
        if isinstance(p, tuple):
            raise SpaceMismatch("circle points are single angle fractions")
        p = as_fraction(p)
        if not 0 <= p < 1:
            raise DomainError(f"angle fraction {p} is outside [0, 1)")
        return p
    if isinstance(space, Product):
        if not isinstance(p, tuple) or len(p) != len(space.factors):
            raise SpaceMismatch(f"expected a {len(space.factors)}-tuple point")
        return tuple(check_point(s, x) for s, x in zip(space.factors, p))
    raise SpaceMismatch(f"unknown space {space!r}")


def distance_squared(space, p, q):
    if isinstance(space, Interval):
        return (p - q) ** 2
    if isinstance(space, Circle):
        gap = (p - q) % 1
        return min(gap, 1 - gap) ** 2
    if isinstance(space, Product):
        return sum(distance_squared(s, a, b) for s, a, b in zip(space.factors, p, q))
    raise SpaceMismatch(f"unknown space {space!r}")


def distance(space, p, q):
    """Exact distance; for product spaces the squared distance is returned."""
    p, q = check_point(space, p), check_point(space, q)
    if isinstance(space, Interval):
        return abs(p - q)
    if isinstance(space, Circle):
        gap = (p - q) % 1
        return min(gap, 1 - gap)
    return distance_squared(space, p, q)


def diameter(space, points):
    """Largest pairwise distance of a finite point set (squared for products)."""
    pts = [check_point(space, p) for p in points]
    if not pts:
        raise ValueError("diameter of an empty set")
    if isinstance(space, Interval):
        return max(pts) - min(pts)
    best = Fraction(0)
    for p, q in combinations(pts, 2):
        best = max(best, distance(space, p, q))
    return best


def as_squared(space, value):
    """Convert a distance from the public convention to its square."""
    return value if isinstance(space, Product) else value * value


# -- regions in spaces -------------------------------------------------------


def check_region(space, region):
    if isinstance(space, Interval):
        if not isinstance(region, Span):
            raise SpaceMismatch("interval regions are Span values")
        if region.lo < space.lo or region.hi > space.hi:
            raise DomainError(f"region {region} leaves [{space.lo}, {space.hi}]")
        return region
    if isinstance(space, Circle):
        if not isinstance(region, Arc):
            raise SpaceMismatch("circle regions are Arc values")
        return region
    if isinstance(space, Product):
        if not isinstance(region, Box) or len(region.factors) != len(space.factors):
            raise SpaceMismatch("product regions are Box values with one factor per space")
        for s, r in zip(space.factors, region.factors):
            check_region(s, r)
        return region
    raise SpaceMismatch(f"unknown space {space!r}")


def region_diameter_squared(region):
    if isinstance(region, Box):
        return sum(region_diameter_squared(r) for r in region.factors)
    return region.diameter ** 2


def region_diameter(space, region):
    """Diameter of a region (squared for product spaces), as a supremum."""
    if isinstance(space, Product):
        return region_diameter_squared(region)
    return region.diameter


def region_contains(region, point):
    if isinstance(region, Box):
        return all(region_contains(r, x) for r, x in zip(region.factors, point))
    return region.contains(point)


def regions_intersect(a, b):
    if isinstance(a, Box):
        return all(regions_intersect(x, y) for x, y in zip(a.factors, b.factors))
    return a.intersects(b)


def region_inside(inner, outer):
    """True when ``inner`` is contained in the closure-respecting ``outer``."""
    if isinstance(inner, Box):
        return all(region_inside(x, y) for x, y in zip(inner.factors, outer.factors))
    if isinstance(inner, Span):
        lo_ok = inner.lo > outer.lo or (inner.lo == outer.lo and (outer.lo_closed or not inner.lo_closed))
        hi_ok = inner.hi < outer.hi or (inner.hi == outer.hi and (outer.hi_closed or not inner.hi_closed))
        return lo_ok and hi_ok
    if outer.full:
        return True
    if inner.full:
        return False
    gap = (inner.start - outer.start) % 1
    return gap + inner.length <= outer.length


# -- JSON --------------------------------------------------------------------


def space_to_json(space):
    if isinstance(space, Interval):
        return {"type": "interval", "lo": fmt(space.lo), "hi": fmt(space.hi)}
    if isinstance(space, Circle):
        return {"type": "circle"}
    return {"type": "product", "factors": [space_to_json(s) for s in space.factors]}


def space_from_json(doc):
    kind = doc.get("type")
    if kind == "interval":
        return Interval(doc["lo"], doc["hi"])
    if kind == "circle":
        return Circle()
    if kind == "product":
        return Product(tuple(space_from_json(d) for d in doc["factors"]))
    raise ValueError(f"unknown space type {kind!r}")


def point_to_json(point):
    if isinstance(point, tuple):
        return [point_to_json(p) for p in point]
    return fmt(point)


def point_from_json(doc):
    if isinstance(doc, list):
        return tuple(point_from_json(d) for d in doc)
    return as_fraction(doc)


def region_to_json(region):
    if isinstance(region, Span):
        return {"type": "interval", "lo": fmt(region.lo), "hi": fmt(region.hi),
                "lo_closed": region.lo_closed, "hi_closed": region.hi_closed}
    if isinstance(region, Arc):
        return {"type": "arc", "start": fmt(region.start), "length": fmt(region.length)}
    return {"type": "box", "factors": [region_to_json(r) for r in region.factors]}


def region_from_json(doc):
    kind = doc.get("type")
    if kind == "interval":
        return Span(doc["lo"], doc["hi"], doc.get("lo_closed", False), doc.get("hi_closed", False))
    if kind == "arc":
        return Arc(doc["start"], doc["length"])
    if kind == "box":
        return Box(tuple(region_from_json(d) for d in doc["factors"]))
    raise ValueError(f"unknown region type {kind!r}")
