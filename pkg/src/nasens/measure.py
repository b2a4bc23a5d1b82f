"""Finitely supported probability measures and the Prohorov metric.

For an atomic ``mu`` only subsets of its support matter in the Prohorov
condition ``mu(B) <= nu(B^eps) + eps``: replacing a Borel set ``B`` by
``B`` intersected with the support keeps ``mu(B)`` and can only shrink the
fattened set.  Between consecutive distance levels the fattened sets do not
change, so the infimum is attained either at a distance level or at a mass
deficit, and the exact value comes out of a finite staircase.

Distances on the circle are in turns.  Product spaces are not supported here
because their distances are square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._rational import as_fraction, fmt
from .enclosure import Enclosure
from .errors import ResourceError, SpaceMismatch
from .metric import Product, check_point, distance, point_from_json, point_to_json, space_from_json, space_to_json

EXACT_SUPPORT_LIMIT = 12


class AtomicMeasure:
    """Probability measure with finitely many atoms; weights are merged and sorted."""

    __slots__ = ("space", "atoms")

    def __init__(self, space, atoms):
        merged = {}
        for p, w in atoms:
            p = check_point(space, p)
            w = as_fraction(w)
            if w <= 0:
                raise ValueError("atom weights must be positive")
            merged[p] = merged.get(p, 0) + w
        if not merged:
            raise ValueError("a measure needs at least one atom")
        if sum(merged.values()) != 1:
            raise ValueError(f"weights sum to {sum(merged.values())}, not 1")
        self.space = space
        self.atoms = tuple(sorted(merged.items()))

    @property
    def support(self):
        return [p for p, _ in self.atoms]

    @property
    def weights(self):
        return [w for _, w in self.atoms]

    def mass(self, points):
        pts = set(points)
        return sum((w for p, w in self.atoms if p in pts), Fraction(0))

    def uniform_level(self):
        """``k`` when every weight is ``1/k`` (membership in the k-atom class), else None."""
        k = len(self.atoms)
        return k if all(w == Fraction(1, k) for _, w in self.atoms) else None

    def in_uniform_class(self, k):
        return self.uniform_level() == k

    def __eq__(self, other):
        return isinstance(other, AtomicMeasure) and self.space == other.space and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return "AtomicMeasure(" + ", ".join(f"{w}@{p}" for p, w in self.atoms) + ")"

    def to_json(self):
        return {"space": space_to_json(self.space),
                "atoms": [{"point": point_to_json(p), "weight": fmt(w)} for p, w in self.atoms]}

    @classmethod
    def from_json(cls, doc):
        space = space_from_json(doc["space"])
        return cls(space, [(point_from_json(a["point"]), a["weight"]) for a in doc["atoms"]])


def dirac(space, x):
    return AtomicMeasure(space, [(x, 1)])


def uniform(space, points):
    """Equal-weight measure ``(1/k) * sum of Diracs`` (coinciding points merge)."""
    points = list(points)
    w = Fraction(1, len(points))
    return AtomicMeasure(space, [(p, w) for p in points])


def pushforward(mu, f):
    """Image measure: each atom is moved by ``f`` and colliding atoms merge."""
    return AtomicMeasure(mu.space, [(f.eval(p), w) for p, w in mu.atoms])


def _staircase_inf(levels, excess):
    """``inf{eps >= 0 : excess(eps) <= eps}`` for a right-continuous step function.

    ``levels`` are the increasing jump points starting at 0 and ``excess[j]``
    is the value on ``[levels[j], levels[j+1])``.
    """
    best = None
    for j, t in enumerate(levels):
        c = excess[j]
        nxt = levels[j + 1] if j + 1 < len(levels) else None
        if c <= t:
            cand = t
        elif nxt is None or c < nxt:
            cand = c
        else:
            continue
        best = cand if best is None else min(best, cand)
    return best


def _check_pair(mu, nu):
    if mu.space != nu.space:
        raise SpaceMismatch("measures live on different spaces")
    if isinstance(mu.space, Product):
        raise SpaceMismatch("Prohorov distance on product spaces is not supported (irrational distances)")


def _levels(mu, nu):
    ds = {distance(mu.space, x, y) for x in mu.support for y in nu.support}
    return sorted(ds | {Fraction(0)})


def _one_sided(mu, nu, subsets):
    """Least eps with ``mu(B) <= nu(B^eps) + eps`` for every B in ``subsets`` (bitmasks)."""
    xs, ys = mu.support, nu.support
    mw, nw = mu.weights, nu.weights
    levels = _levels(mu, nu)
    dist = [[distance(mu.space, x, y) for x in xs] for y in ys]
    subsets = list(subsets)
    mass = {}
    for B in subsets:
        mass[B] = sum((mw[i] for i in range(len(xs)) if B >> i & 1), Fraction(0))
    excess = []
    for t in levels:
        near = [sum(1 << i for i in range(len(xs)) if dist[j][i] <= t) for j in range(len(ys))]
        worst = Fraction(0)
        for B in subsets:
            covered = sum((nw[j] for j in range(len(ys)) if near[j] & B), Fraction(0))
            worst = max(worst, mass[B] - covered)
        excess.append(worst)
    return _staircase_inf(levels, excess)


def prohorov_one_sided(mu, nu):
    """Exact ``inf{eps : mu(B) <= nu(B^eps) + eps for all B}``."""
    _check_pair(mu, nu)
    if len(set(mu.support) | set(nu.support)) > EXACT_SUPPORT_LIMIT:
        raise ResourceError(f"exact mode handles at most {EXACT_SUPPORT_LIMIT} support points")
    return _one_sided(mu, nu, range(1, 1 << len(mu.atoms)))


def prohorov_distance(mu, nu, allow_bounds=False):
    """Prohorov distance, symmetrised as the larger of the two one-sided values.

    Combined supports above 12 points need ``allow_bounds=True`` and then
    give an :class:`~nasens.enclosure.Enclosure`.
    """
    _check_pair(mu, nu)
    if len(set(mu.support) | set(nu.support)) > EXACT_SUPPORT_LIMIT:
        if not allow_bounds:
            raise ResourceError(f"exact mode handles at most {EXACT_SUPPORT_LIMIT} support points; "
                                "pass allow_bounds=True for an enclosure")
        return prohorov_bounds(mu, nu)
    return max(prohorov_one_sided(mu, nu), prohorov_one_sided(nu, mu))


def _runs(n):
    for i in range(n):
        for j in range(i, n):
            yield ((1 << (j + 1)) - 1) ^ ((1 << i) - 1)


def _quantile_coupling(mu, nu):
    """North-west-corner coupling of the sorted atom lists."""
    a, b = list(mu.atoms), list(nu.atoms)
    i = j = 0
    ra, rb = a[0][1], b[0][1]
    out = []
    while i < len(a) and j < len(b):
        m = min(ra, rb)
        out.append((a[i][0], b[j][0], m))
        ra -= m
        rb -= m
        if ra == 0:
            i += 1
            ra = a[i][1] if i < len(a) else 0
        if rb == 0:
            j += 1
            rb = b[j][1] if j < len(b) else 0
    return out


def prohorov_bounds(mu, nu):
    """Certified bracket for the Prohorov distance of larger measures.

    The lower bound restricts the sets ``B`` to contiguous runs of sorted
    support points.  The upper bound is the Ky Fan distance of the quantile
    coupling, which dominates the Prohorov distance.
    """
    _check_pair(mu, nu)
    lower = max(_one_sided(mu, nu, _runs(len(mu.atoms))), _one_sided(nu, mu, _runs(len(nu.atoms))))
    pairs = _quantile_coupling(mu, nu)
    levels = sorted({distance(mu.space, x, y) for x, y, _ in pairs} | {Fraction(0)})
    tail = [sum((m for x, y, m in pairs if distance(mu.space, x, y) > t), Fraction(0)) for t in levels]
    upper = _staircase_inf(levels, tail)
    return Enclosure(lower, max(lower, upper))


# -- induced dynamics --------------------------------------------------------


@dataclass(frozen=True)
class ProhorovBall:
    """Open Prohorov ball, the basic open region of a measure space."""

    center: AtomicMeasure
    radius: Fraction

    def contains(self, mu):
        return prohorov_distance(self.center, mu) < self.radius


class MeasureSystem:
    """System on probability measures induced by pushing forward through a base system."""

    def __init__(self, base):
        self.base = base
        self.name = f"measures({base.name})"

    def map(self, i):
        f = self.base.map(i)
        return lambda mu: pushforward(mu, f)

    def apply(self, n, mu):
        """``n``-step image, moving each atom along its base orbit."""
        return AtomicMeasure(mu.space, [(self.base.apply(n, p), w) for p, w in mu.atoms])

    def orbit(self, mu, n):
        return [self.apply(j, mu) for j in range(n + 1)]

    @staticmethod
    def distance(mu, nu):
        return prohorov_distance(mu, nu)


def induced_system(s):
    return MeasureSystem(s)


@dataclass
class LiftRow:
    n: int
    u: object
    v: object
    base_distance: Fraction
    lifted_distance: Fraction
    ok: bool


@dataclass
class LiftReport:
    holds: bool
    rows: list


def dirac_lift_sensitivity_bridge(s, regions, delta, horizon):
    """Lift every base separation witness to the pair of Dirac measures.

    Each row checks that the lifted distance equals ``min(d, 1)`` and still
    exceeds ``delta`` at the same time ``n``.
    """
    from .detect import n_set

    delta = as_fraction(delta)
    if not delta < 1:
        raise ValueError("delta must be below 1 for Dirac lifts")
    lifted = induced_system(s)
    rows = []
    for U in regions:
        for w in n_set(s, U, delta, horizon).witnesses:
            a = lifted.apply(w.n, dirac(s.space, w.u))
            b = lifted.apply(w.n, dirac(s.space, w.v))
            d = prohorov_distance(a, b)
            rows.append(LiftRow(w.n, w.u, w.v, w.distance, d, d == min(w.distance, 1) and d > delta))
    return LiftReport(all(r.ok for r in rows), rows)
