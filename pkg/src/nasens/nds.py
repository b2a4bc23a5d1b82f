"""Non-autonomous systems: sequences of self-maps and their compositions.

An :class:`NDSystem` wraps a rule ``i -> f_i`` (indices start at 1).  The
composition of ``f_i, ..., f_{i+n-1}`` (applied in that order) is returned by
:func:`partial_composition`; ``n = 0`` gives the identity.

Interval systems whose maps are all PL compose exactly into a single
:class:`~nasens.plmap.PLMap`; systems containing quadratic pieces compose
lazily into a :class:`~nasens.plmap.Composite`.  Circle systems multiply
multipliers (angles are followed through their lifts), and product systems
act factorwise.

Every statement "for all n" is checked only up to an explicit horizon.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .enclosure import Enclosure
from .errors import SpaceMismatch
from .metric import Circle, Interval, Product, check_point, space_from_json, space_to_json
from .plmap import (
    MAX_BREAKPOINTS,
    CircleMap,
    Composite,
    PLMap,
    ProductMap,
    compose_pl,
    identity_map,
    map_from_json,
    map_to_json,
    structurally_equal,
    sup_distance,
)


class NDSystem:
    """A non-autonomous system ``f_1, f_2, ...`` on ``space``.

    ``kind`` is ``"explicit"``, ``"periodic"`` or ``"formula"``; periodic
    systems carry ``period``.  ``limit`` optionally names the uniform limit.
    """

    def __init__(self, space, rule: Callable, kind="formula", period=None, name=None,
                 limit=None, max_breakpoints=MAX_BREAKPOINTS, factors=None):
        self.space = space
        self._rule = rule
        self.kind = kind
        self.period = period
        self.name = name or "system"
        self.limit = limit
        self.max_breakpoints = max_breakpoints
        self.factors = factors
        self._maps = {}
        self._prefix = {}
        self._last = None
        self._lock = threading.Lock()

    # constructors

    @classmethod
    def from_list(cls, space, maps, tail=None, **kw):
        """``maps`` first, then ``tail`` (a map, or a callable of the index) forever.

        Without a tail the last listed map repeats.
        """
        maps = list(maps)
        if not maps:
            raise ValueError("need at least one map")
        if tail is None:
            tail = maps[-1]
        tail_rule = tail if callable(tail) and not hasattr(tail, "eval") else (lambda i: tail)

        def rule(i):
            return maps[i - 1] if i <= len(maps) else tail_rule(i)

        kw.setdefault("kind", "explicit")
        return cls(space, rule, **kw)

    @classmethod
    def periodic(cls, space, block, **kw):
        block = list(block)
        if not block:
            raise ValueError("empty period block")
        k = len(block)
        return cls(space, lambda i: block[(i - 1) % k], kind="periodic", period=k, **kw)

    @classmethod
    def constant(cls, space, f, **kw):
        kw.setdefault("limit", f)
        return cls(space, lambda i: f, kind="periodic", period=1, **kw)

    # access

    def map(self, i):
        if i < 1:
            raise ValueError("system indices start at 1")
        m = self._maps.get(i)
        if m is None:
            m = self._rule(i)
            with self._lock:
                m = self._maps.setdefault(i, m)
        return m

    __getitem__ = map

    def maps(self, i, n):
        return [self.map(j) for j in range(i, i + n)]

    @property
    def is_interval(self):
        return isinstance(self.space, Interval)

    def is_exact(self, upto=1):
        """True when the first ``upto`` maps are PL or circle maps."""
        return all(isinstance(self.map(i), (PLMap, CircleMap)) for i in range(1, upto + 1))

    def apply(self, n, x):
        """``f_1^n(x)`` without building the composed map."""
        if isinstance(self.space, Product):
            return tuple(fs.apply(n, xi) for fs, xi in zip(self.factors, x))
        if isinstance(self.space, Circle):
            return (multiplier(self, 1, n) * x) % 1
        for m in self.maps(1, n):
            x = m.eval(x)
        return x

    def __repr__(self):
        return f"NDSystem({self.name!r}, kind={self.kind})"


def multiplier(s, i, n):
    c = Fraction(1)
    for m in s.maps(i, n):
        c *= m.multiplier
    return c


def _compose_exact(maps, limit):
    out = maps[0]
    for m in maps[1:]:
        out = compose_pl(m, out, limit)
    return out


def partial_composition(s, i, n, materialize=True):
    """The composed map ``f_{i+n-1} o ... o f_i``; ``n = 0`` is the identity."""
    if i < 1 or n < 0:
        raise ValueError("need i >= 1 and n >= 0")
    if n == 0:
        return identity_map(s.space)
    if isinstance(s.space, Product):
        return ProductMap(partial_composition(fs, i, n, materialize) for fs in s.factors)
    if isinstance(s.space, Circle):
        return CircleMap(multiplier(s, i, n))
    maps = s.maps(i, n)
    if not materialize or not all(isinstance(m, PLMap) for m in maps):
        return maps[0] if n == 1 else Composite(maps)
    if i != 1:
        return _compose_exact(maps, s.max_breakpoints)
    return _prefix(s, n)


def _prefix(s, n):
    """Memoised ``f_1^n`` for PL systems: powers of two plus the latest prefix."""
    with s._lock:
        if n in s._prefix:
            return s._prefix[n]
        start, base = 0, None
        for m, val in s._prefix.items():
            if start < m <= n:
                start, base = m, val
        if s._last is not None and start < s._last[0] <= n:
            start, base = s._last
    out = base
    for j in range(start + 1, n + 1):
        f = s.map(j)
        out = f if out is None else compose_pl(f, out, s.max_breakpoints)
        if j & (j - 1) == 0:
            with s._lock:
                s._prefix.setdefault(j, out)
    with s._lock:
        s._last = (n, out)
    return out


def kth_iterate_system(s, k):
    """System whose n-th map is ``f_{k(n-1)+1}^k``; its n-step composition is ``f_1^{kn}``."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return s
    name = f"{s.name}[{k}]"
    if isinstance(s.space, Product):
        parts = tuple(kth_iterate_system(fs, k) for fs in s.factors)
        return product_system(*parts, name=name)
    if isinstance(s.space, Circle):
        rule = lambda n: CircleMap(multiplier(s, k * (n - 1) + 1, k))  # noqa: E731
    else:
        rule = lambda n: Composite(s.maps(k * (n - 1) + 1, k))  # noqa: E731
    period = None
    kind = "formula"
    if s.period is not None:
        from math import gcd
        period = s.period // gcd(s.period, k)
        kind = "periodic"
    return NDSystem(s.space, rule, kind=kind, period=period, name=name,
                    max_breakpoints=s.max_breakpoints)


def power(f, k, max_breakpoints=MAX_BREAKPOINTS):
    """k-fold self-composition of a single map (k = 0 is the identity)."""
    if k == 0:
        if isinstance(f, ProductMap):
            return ProductMap(power(g, 0) for g in f.factors)
        return identity_map(f.domain)
    if isinstance(f, CircleMap):
        return CircleMap(f.multiplier ** k)
    if isinstance(f, ProductMap):
        return ProductMap(power(g, k, max_breakpoints) for g in f.factors)
    if isinstance(f, PLMap):
        return _compose_exact([f] * k, max_breakpoints)
    return f if k == 1 else Composite([f] * k)


def periodic_collapse(s, verify_powers=0):
    """``g = f_k o ... o f_1`` for a k-periodic system.

    With ``verify_powers = S`` the identity ``g^j = f_1^{kj}`` is checked
    structurally for every j <= S and a mismatch raises ``AssertionError``.
    """
    if s.period is None:
        raise ValueError("periodic_collapse needs a periodic system")
    k = s.period
    g = partial_composition(s, 1, k)
    for j in range(1, verify_powers + 1):
        if not structurally_equal(power(g, j, s.max_breakpoints), partial_composition(s, 1, k * j)):
            raise AssertionError(f"g^{j} differs from the {k * j}-step composition")
    return g


def product_system(*systems, name=None):
    """Factorwise product; the n-th map is ``f_n x g_n x ...``."""
    if len(systems) < 2:
        raise ValueError("a product needs at least two systems")
    flat = []
    for t in systems:
        flat.extend(t.factors if isinstance(t.space, Product) else [t])
    space = Product(tuple(t.space for t in flat))
    periods = [t.period for t in flat]
    period = None
    if all(p is not None for p in periods):
        from math import lcm
        period = lcm(*periods)
    return NDSystem(space, lambda i: ProductMap(t.map(i) for t in flat),
                    kind="periodic" if period else "formula", period=period,
                    name=name or " x ".join(t.name for t in flat), factors=tuple(flat))


# -- orbits and periodic points ---------------------------------------------


@dataclass(frozen=True)
class Orbit:
    base: object
    points: tuple

    @property
    def length(self):
        return len(self.points) - 1


def orbit(s, x, n):
    """``[x, f_1(x), f_1^2(x), ..., f_1^n(x)]`` computed exactly."""
    x = check_point(s.space, x)
    if isinstance(s.space, Product):
        parts = [orbit(fs, xi, n).points for fs, xi in zip(s.factors, x)]
        return Orbit(x, tuple(zip(*parts)))
    pts = [x]
    if isinstance(s.space, Circle):
        c = Fraction(1)
        for m in s.maps(1, n):
            c *= m.multiplier
            pts.append((c * x) % 1)
    else:
        for m in s.maps(1, n):
            x = m.eval(x)
            pts.append(x)
    return Orbit(pts[0], tuple(pts))


@dataclass(frozen=True)
class PeriodicPointCheck:
    holds: bool
    period: int
    checked_up_to: int
    first_failure: int | None = None


def is_periodic_point(s, x, N, m_max):
    """Check ``f_1^{mN}(x) = x`` for every ``m <= m_max``.

    A positive answer is finite-horizon evidence only.
    """
    if N < 1:
        raise ValueError("candidate period must be positive")
    x = check_point(s.space, x)
    pts = orbit(s, x, N * m_max).points
    for m in range(1, m_max + 1):
        if pts[m * N] != x:
            return PeriodicPointCheck(False, N, m_max, m)
    return PeriodicPointCheck(True, N, m_max)


# -- convergence -------------------------------------------------------------


@dataclass
class ConvergenceReport:
    """Sup distances ``D(f_n^k, f^k)`` for ``n <= n_max`` and ``k <= k_max``."""

    entries: dict = field(default_factory=dict)
    row_max: dict = field(default_factory=dict)
    eps: Fraction = Fraction(0)
    tail_start: int | None = None

    def entry(self, n, k):
        return self.entries[(n, k)]


def _upper(d):
    return d.hi if isinstance(d, Enclosure) else d


def uniform_convergence_report(s, f, n_max, k_max, eps=Fraction(0)):
    """Table of ``D(f_n^k, f^k)`` with row maxima.

    ``tail_start`` is the least ``N`` such that every row ``n >= N`` in range
    has its maximum (upper bound, for enclosures) at most ``eps``.
    """
    report = ConvergenceReport(eps=Fraction(eps))
    limits = {k: power(f, k, s.max_breakpoints) for k in range(1, k_max + 1)}
    for n in range(1, n_max + 1):
        fn = s.map(n)
        for k in range(1, k_max + 1):
            report.entries[(n, k)] = sup_distance(power(fn, k, s.max_breakpoints), limits[k])
        report.row_max[n] = max((report.entries[(n, k)] for k in range(1, k_max + 1)), key=_upper)
    tail = None
    for n in range(n_max, 0, -1):
        if _upper(report.row_max[n]) <= report.eps:
            tail = n
        else:
            break
    report.tail_start = tail
    return report


# -- JSON --------------------------------------------------------------------


def system_from_json(doc):
    """Load a system description.

    ``kind`` is ``explicit`` (``maps`` plus optional ``tail``), ``periodic``
    (``maps`` is the block), ``formula`` (a corpus ``name`` with ``params``)
    or ``product`` (a list of ``factors``, each itself a description).
    """
    kind = doc.get("kind")
    if kind == "product":
        return product_system(*(system_from_json(f) for f in doc["factors"]), name=doc.get("name"))
    if kind == "formula":
        from .corpus import build
        return build(doc["name"], **doc.get("params", {}))
    space = space_from_json(doc["space"])
    maps = [map_from_json(m) for m in doc["maps"]]
    for m in maps:
        if isinstance(space, Interval) and isinstance(m, PLMap) and m.domain != space:
            raise SpaceMismatch("map domain differs from the system space")
    name = doc.get("name")
    if kind == "periodic":
        return NDSystem.periodic(space, maps, name=name)
    if kind == "explicit":
        tail = map_from_json(doc["tail"]) if "tail" in doc else None
        limit = map_from_json(doc["limit"]) if "limit" in doc else None
        return NDSystem.from_list(space, maps, tail=tail, name=name, limit=limit)
    raise ValueError(f"unknown system kind {kind!r}")


def system_to_json(s, count):
    """Explicit description of the first ``count`` maps (tail repeats the last)."""
    return {"kind": "explicit", "name": s.name, "space": space_to_json(s.space),
            "maps": [map_to_json(m) for m in s.maps(1, count)]}
