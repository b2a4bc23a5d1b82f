"""Named example systems and a seeded random generator.

Systems are addressable by name (``build("tent")``); short aliases such as
``ex3.2`` are accepted as well.
"""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .metric import UNIT, Circle, Interval
from .nds import NDSystem, partial_composition
from .plmap import AffinePiece, CircleMap, HybridMap, PLMap, QuadraticPiece, structurally_equal

F = Fraction


def tent_map():
    return PLMap([(0, 0), (F(1, 2), 1), (1, 0)])


def tent_system():
    return NDSystem.constant(UNIT, tent_map(), name="tent")


def identity_system(space=UNIT):
    from .plmap import identity_map
    return NDSystem.constant(space, identity_map(space), name="identity")


# -- circle: alternating expanding and contracting blocks --------------------


def expanding_block(n):
    """Composition of the angle maps with multipliers j/(j-1), j = 2..n."""
    c = F(1)
    for j in range(2, n + 1):
        c *= F(j, j - 1)
    return CircleMap(c)


def contracting_block(n):
    """Composition of the angle maps with multipliers (j-1)/j, j = 2..n."""
    c = F(1)
    for j in range(2, n + 1):
        c *= F(j - 1, j)
    return CircleMap(c)


def circle_multipliers_system():
    """Odd entries ``2n-1`` are the expanding n-block, even entries ``2n`` the contracting one.

    The first ``2n-1`` maps compose to multiplier ``n`` and the first ``2n``
    maps compose to the identity.
    """
    def rule(i):
        n = (i + 1) // 2
        return expanding_block(n) if i % 2 else contracting_block(n)

    return NDSystem(Circle(), rule, kind="formula", name="circle-multipliers")


# -- interval: blocks f^-1, f, f, f^-1 of PL homeomorphisms ----------------


def rationals_in_unit():
    """1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ... (reduced, by denominator then numerator)."""
    for q in itertools.count(2):
        for p in range(1, q):
            if F(p, q).denominator == q:
                yield F(p, q)


def _distinct_index_tuples():
    """4-tuples of distinct positive indices ordered by sum, then lexicographically."""
    for total in itertools.count(10):
        for a in range(1, total):
            for b in range(1, total - a):
                for c in range(1, total - a - b):
                    d = total - a - b - c
                    if len({a, b, c, d}) == 4:
                        yield a, b, c, d


class _Enumeration:
    """Thread-safe lazy list of (a, b, c, d) tuples of distinct rationals in (0, 1)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._rats = []
        self._rat_iter = rationals_in_unit()
        self._idx_iter = _distinct_index_tuples()
        self._tuples = []

    def _rat(self, i):
        while len(self._rats) < i:
            self._rats.append(next(self._rat_iter))
        return self._rats[i - 1]

    def __getitem__(self, n):
        with self._lock:
            while len(self._tuples) < n:
                idx = next(self._idx_iter)
                self._tuples.append(tuple(self._rat(i) for i in idx))
            return self._tuples[n - 1]


_TUPLES = _Enumeration()


def homeomorphism_tuple(n):
    """The n-th (a, b, c, d) of the enumeration (1-based)."""
    return _TUPLES[n]


def homeomorphism_through(a, b, c, d):
    """Monotone PL homeomorphism of [0, 1] with ``f(a) = c`` and ``f(b) = d``."""
    if a > b:
        a, b, c, d = b, a, d, c
    if c < d:
        return PLMap([(0, 0), (a, c), (b, d), (1, 1)])
    return PLMap([(0, 1), (a, c), (b, d), (1, 0)])


def homeomorphism(n):
    return homeomorphism_through(*homeomorphism_tuple(n))


def homeomorphism_blocks_system():
    """Entry ``m`` is ``f_n^-1`` for ``m`` in {4n-3, 4n} and ``f_n`` for ``m`` in {4n-2, 4n-1}.

    Hence the first ``4n`` maps compose to the identity and the first
    ``4n - 1`` compose to ``f_n``.
    """
    inverses = {}

    def rule(m):
        n, r = (m + 3) // 4, (m - 1) % 4
        f = homeomorphism(n)
        if r in (1, 2):
            return f
        if n not in inverses:
            inverses[n] = f.inverse()
        return inverses[n]

    return NDSystem(UNIT, rule, kind="formula", name="homeomorphism-blocks")


# -- interval [0, 2]: quadratic first map, PL tail -------------------------


TWO = Interval(0, 2)


def tent_with_quadratic():
    """Tent on [0, 1] followed by ``4(x-1)(2-x)`` on [1, 2]."""
    return HybridMap([AffinePiece(F(0), F(1, 2), F(0), F(1)),
                      AffinePiece(F(1, 2), F(1), F(1), F(0)),
                      QuadraticPiece(F(1), F(2), 4, 1, 2)])


def tent_with_shift():
    """Tent on [0, 1] followed by ``x - 1`` on [1, 2]."""
    return PLMap([(0, 0), (F(1, 2), 1), (1, 0), (2, 1)])


def tent_quadratic_system():
    g = tent_with_shift()
    return NDSystem.from_list(TWO, [tent_with_quadratic()], tail=g, limit=g, name="tent-quadratic")


# -- interval [0, 1]: two transient maps then a fixed limit ----------------


def collapsing_maps():
    f1 = PLMap([(0, 0), (F(1, 2), F(1, 2)), (1, F(1, 2))])
    f2 = PLMap([(0, F(1, 3)), (F(1, 2), F(1, 3)), (1, F(2, 3))])
    f = PLMap([(0, 1), (F(1, 2), 0), (F(3, 4), 1), (1, F(1, 2))])
    return f1, f2, f


def collapsing_limit_system():
    f1, f2, f = collapsing_maps()
    return NDSystem.from_list(UNIT, [f1, f2], tail=f, limit=f, name="collapsing-limit")


# -- random ------------------------------------------------------------------


def random_pl_map(rng, pieces, grid=16):
    xs = sorted(rng.sample(range(1, grid), pieces - 1)) if pieces > 1 else []
    xs = [F(0)] + [F(x, grid) for x in xs] + [F(1)]
    return PLMap([(x, F(rng.randint(0, grid), grid)) for x in xs])


def random_pl_system(seed=0, period=1, pieces=2, grid=16):
    """Deterministic ``period``-periodic system of PL self-maps of [0, 1]."""
    if period < 1 or pieces < 1:
        raise ValueError("period and pieces must be positive")
    if pieces > grid:
        raise ValueError("more pieces than grid cells")
    rng = random.Random(seed)
    block = [random_pl_map(rng, pieces, grid) for _ in range(period)]
    return NDSystem.periodic(UNIT, block, name=f"random-pl(seed={seed},k={period},p={pieces})")


# -- registry ----------------------------------------------------------------


@dataclass
class CorpusEntry:
    name: str
    builder: Callable
    summary: str
    aliases: tuple = ()
    checks: Callable | None = field(default=None, repr=False)

    def build(self, **params):
        return self.builder(**params)

    def self_check(self, **params):
        """Run the entry's structural checks; returns a list of failure messages."""
        return self.checks(self.build(**params)) if self.checks else []


def _check_circle(s, upto=16):
    bad = []
    for n in range(1, upto + 1):
        if partial_composition(s, 1, 2 * n - 1).multiplier != n:
            bad.append(f"odd prefix {2 * n - 1}")
        if partial_composition(s, 1, 2 * n).multiplier != 1:
            bad.append(f"even prefix {2 * n}")
    return bad


def _check_blocks(s, upto=4):
    bad = []
    ident = PLMap.identity(UNIT)
    for n in range(1, upto + 1):
        if not structurally_equal(partial_composition(s, 1, 4 * n), ident):
            bad.append(f"prefix {4 * n} is not the identity")
        if not structurally_equal(partial_composition(s, 1, 4 * n - 1), homeomorphism(n)):
            bad.append(f"prefix {4 * n - 1} is not f_{n}")
    return bad


def _check_tail(start):
    def check(s, upto=8):
        return [f"entry {i} differs from the limit" for i in range(start, upto + 1)
                if not structurally_equal(s.map(i), s.limit)]
    return check


def _check_periodic(s, upto=3):
    return [f"entry {j + s.period} differs from entry {j}" for j in range(1, upto * s.period + 1)
            if not structurally_equal(s.map(j), s.map(j + s.period))]


ENTRIES = [
    CorpusEntry("tent", tent_system, "constant tent map on [0, 1]", (), _check_periodic),
    CorpusEntry("identity", identity_system, "constant identity on [0, 1]", (), _check_periodic),
    CorpusEntry("circle-multipliers", circle_multipliers_system,
                "circle blocks with prefixes of multiplier n and 1", ("ex3.2",), _check_circle),
    CorpusEntry("homeomorphism-blocks", homeomorphism_blocks_system,
                "PL homeomorphism blocks f^-1, f, f, f^-1 over an enumeration of rational tuples",
                ("ex3.4",), _check_blocks),
    CorpusEntry("tent-quadratic", tent_quadratic_system,
                "quadratic-tailed tent first, then tent with a shift on [0, 2]", ("ex4.2",), _check_tail(2)),
    CorpusEntry("collapsing-limit", collapsing_limit_system,
                "two transient maps collapsing [0, 1/2], then a fixed PL limit", ("ex4.3",), _check_tail(3)),
    CorpusEntry("random-pl", random_pl_system, "seeded periodic random PL system", (), _check_periodic),
]

REGISTRY = {}
for _e in ENTRIES:
    REGISTRY[_e.name] = _e
    for _a in _e.aliases:
        REGISTRY[_a] = _e


def names():
    return [e.name for e in ENTRIES]


def entry(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown system {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def build(name, **params):
    return entry(name).build(**params)
