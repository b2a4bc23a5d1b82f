"""Sensitivity and transitivity at a finite horizon.

Membership of ``n`` in the separation set ``N(V, delta)`` (times at which two
points of ``V`` end up more than ``delta`` apart) is decided exactly: the
image of ``V`` under the first ``n`` maps is tracked one elementary map at a
time, and ``n`` is a member exactly when that image has diameter above
``delta``.  No composed map is ever formed, so there is no breakpoint growth.

Witness pairs are produced on demand by pulling two thin target bands near
the top and bottom of the final image back through the recorded chain of
images.  Every witness is re-validated by evaluating the system at the two
points.

Deciders for properties quantified over all open sets run over a finite
:class:`Battery` of regions and answer ``witnessed``, ``refuted-at-horizon``
or ``inconclusive``; the battery and horizon are embedded in the certificate.

Thresholds follow the metric convention: plain distances (turns on the
circle) for 1-D spaces, squared distances for products.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ._rational import as_fraction, fmt, simplest_between
from .errors import ResourceError
from .metric import (
    HALF,
    Arc,
    Box,
    Circle,
    Interval,
    Product,
    Span,
    check_region,
    distance,
    point_to_json,
    region_diameter,
    region_inside,
    region_to_json,
    regions_intersect,
    space_to_json,
)
from .nds import kth_iterate_system, product_system
from .plmap import atoms

WITNESSED = "witnessed"
REFUTED = "refuted-at-horizon"
INCONCLUSIVE = "inconclusive"
SCHEMA_VERSION = 1
MAX_LISTED_TUPLES = 4096


def worker_count():
    cap = os.environ.get("NDS_THREADS")
    default = min(4, os.cpu_count() or 1)
    if cap is None:
        return default
    try:
        return max(1, min(default, int(cap)))
    except ValueError:
        return default


def _pmap(fn, items):
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) < 8:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- image trackers ----------------------------------------------------------


def _pull_one(m, dom, target):
    """Closed subinterval of ``dom``'s interior mapped by ``m`` into ``target``."""
    P, Q = target
    for piece, x0, x1 in m.monotone_parts(dom):
        y0, y1 = piece.value(x0), piece.value(x1)
        if y0 == y1:
            if P <= y0 <= Q:
                w = x1 - x0
                return x0 + w / 4, x0 + 3 * w / 4
            continue
        lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
        a, b = max(lo, P), min(hi, Q)
        if a >= b:
            continue
        w = b - a
        xa = piece.point_with_value_in(a + w / 4, a + w / 3, x0, x1)
        xb = piece.point_with_value_in(a + 2 * w / 3, a + 3 * w / 4, x0, x1)
        return (xa, xb) if xa < xb else (xb, xa)
    raise AssertionError("no monotone stretch reaches the target band")


class _IntervalTrack:
    def __init__(self, system, region):
        self.system = system
        self.atoms = []
        self.spans = [region]
        self.ends = [0]

    def extend(self, n):
        while len(self.ends) <= n:
            for a in atoms(self.system.map(len(self.ends))):
                self.spans.append(a.image(self.spans[-1]))
                self.atoms.append(a)
            self.ends.append(len(self.atoms))

    def image(self, n):
        self.extend(n)
        return self.spans[self.ends[n]]

    def diam_sq(self, n):
        return self.image(n).diameter ** 2

    def _pull(self, j_end, band):
        for j in range(j_end, 0, -1):
            band = _pull_one(self.atoms[j - 1], self.spans[j - 1], band)
        return simplest_between(*band)

    def witness(self, n, thr):
        img = self.image(n)
        gap = img.diameter - thr
        if gap <= 0:
            raise ValueError(f"{n} is not a member")
        j = self.ends[n]
        u = self._pull(j, (img.hi - gap / 3, img.hi))
        v = self._pull(j, (img.lo, img.lo + gap / 3))
        return u, v


class _CircleTrack:
    def __init__(self, system, region):
        self.system = system
        self.region = region
        self.mult = [Fraction(1)]

    def extend(self, n):
        while len(self.mult) <= n:
            self.mult.append(self.mult[-1] * self.system.map(len(self.mult)).multiplier)

    def image(self, n):
        self.extend(n)
        return Arc(self.mult[n] * self.region.start, self.mult[n] * self.region.length)

    def diam_sq(self, n):
        return self.image(n).diameter ** 2

    def witness(self, n, thr):
        self.extend(n)
        c, s, L = self.mult[n], self.region.start, self.region.length
        top = min(c * L, HALF)
        if top <= thr:
            raise ValueError(f"{n} is not a member")
        tau = simplest_between(thr + (top - thr) / 3, top - (top - thr) / 3)
        step = tau / c
        u = simplest_between(s + (L - step) / 3, s + 2 * (L - step) / 3)
        return u, (u + step) % 1


class _ProductTrack:
    def __init__(self, system, region):
        self.system = system
        self.parts = [_track(fs, r) for fs, r in zip(system.factors, region.factors)]

    def image(self, n):
        return Box(tuple(p.image(n) for p in self.parts))

    def diam_sq(self, n):
        return sum(p.diam_sq(n) for p in self.parts)

    def witness(self, n, sq_thr):
        diams = [p.diam_sq(n) for p in self.parts]
        total = sum(diams)
        if total <= sq_thr:
            raise ValueError(f"{n} is not a member")
        c = (1 + sq_thr / total) / 2
        us, vs = [], []
        for p, d2 in zip(self.parts, diams):
            if d2 == 0:
                img = p.image(0)
                x = simplest_between(img.lo, img.hi) if isinstance(img, Span) else img.start
                us.append(x)
                vs.append(x)
                continue
            if isinstance(p, _ProductTrack):
                u, v = p.witness(n, c * d2)
            else:
                diam = p.image(n).diameter
                u, v = p.witness(n, diam * (1 + c) / 2)
            us.append(u)
            vs.append(v)
        return tuple(us), tuple(vs)


def _track(system, region):
    if isinstance(system.space, Product):
        return _ProductTrack(system, region)
    if isinstance(system.space, Circle):
        return _CircleTrack(system, region)
    return _IntervalTrack(system, region)


# -- N-sets ------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    n: int
    u: object
    v: object
    distance: Fraction

    def to_json(self):
        return {"n": self.n, "u": point_to_json(self.u), "v": point_to_json(self.v),
                "distance": fmt(self.distance)}


@dataclass
class NSet:
    """Separation times ``n <= horizon`` of ``region`` at threshold ``delta``.

    Members are exact and complete below ``inconclusive_from`` (or the
    horizon).  Witness pairs are computed lazily and re-validated.
    """

    system: object
    region: object
    delta: Fraction
    horizon: int
    members: list
    resolution: str = "exact"
    inconclusive_from: int | None = None
    _track: object = field(default=None, repr=False, compare=False)
    _witnesses: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def mask(self):
        return sum(1 << n for n in self.members)

    def __contains__(self, n):
        return n in set(self.members)

    def witness(self, n):
        w = self._witnesses.get(n)
        if w is None:
            if n not in self:
                raise KeyError(f"{n} is not in the N-set")
            u, v = self._track.witness(n, self.delta)
            s = self.system
            d = distance(s.space, s.apply(n, u), s.apply(n, v))
            if not d > self.delta:
                raise AssertionError(f"witness at n={n} fails re-validation")
            w = self._witnesses.setdefault(n, Witness(n, u, v, d))
        return w

    @property
    def witnesses(self):
        return [self.witness(n) for n in self.members]

    def to_json(self, with_witnesses=True):
        doc = {"system": self.system.name, "region": region_to_json(self.region),
               "delta": fmt(self.delta), "horizon": self.horizon, "members": list(self.members),
               "resolution": self.resolution, "inconclusive_from": self.inconclusive_from}
        if with_witnesses:
            doc["witnesses"] = [w.to_json() for w in self.witnesses]
        return doc


def n_set(s, region, delta, horizon):
    """Exact finite-horizon separation set of ``region`` at threshold ``delta``.

    ``delta`` is squared for product spaces.
    """
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    check_region(s.space, region)
    track = _track(s, region)
    sq = delta if isinstance(s.space, Product) else delta * delta
    members, stop = [], None
    for n in range(1, horizon + 1):
        try:
            d2 = track.diam_sq(n)
        except ResourceError:
            stop = n
            break
        if d2 > sq:
            members.append(n)
    return NSet(s, region, delta, horizon, members, inconclusive_from=stop, _track=track)


# -- batteries ---------------------------------------------------------------


def _dyadic_regions(space, b):
    if isinstance(space, Interval):
        h = space.length / 2**b
        return [Span(space.lo + j * h, space.lo + (j + 1) * h) for j in range(2**b)]
    if isinstance(space, Circle):
        h = Fraction(1, 2**b)
        return [Arc(j * h, h) for j in range(2**b)]
    parts = [_dyadic_regions(f, b) for f in space.factors]
    return [Box(t) for t in itertools.product(*parts)]


@dataclass(frozen=True)
class Battery:
    """Finite family of open regions standing in for "every open set"."""

    space: object
    resolution: int
    regions: tuple
    within: object = None
    fine_enough: bool = True

    def describe(self):
        return {"kind": "dyadic", "resolution": self.resolution, "count": len(self.regions),
                "within": region_to_json(self.within) if self.within is not None else None,
                "fine_enough": self.fine_enough}


def default_battery(space, b=5, within=None, delta=None, max_b=None, max_regions=16384):
    """Dyadic regions of side ``2**-b`` (relative to each factor).

    With ``delta`` given, ``b`` is raised until every region has diameter at
    most ``delta`` (squared for products), so that a region never counts as
    separated merely for being wide.  ``fine_enough`` records whether that
    was reached before the size cap.
    """
    if b < 1:
        raise ValueError("battery resolution must be at least 1")
    dims = len(space.factors) if isinstance(space, Product) else 1
    if max_b is None:
        max_b = max(b, 14 // dims)
    while True:
        regions = _dyadic_regions(space, b)
        wide = delta is not None and region_diameter(space, regions[0]) > as_fraction(delta)
        if not wide or b >= max_b or 2 ** (dims * (b + 1)) > max_regions:
            break
        b += 1
    if within is not None:
        check_region(space, within)
        regions = [r for r in regions if region_inside(r, within)]
        if not regions:
            raise ValueError("no battery region fits inside the restriction")
    return Battery(space, b, tuple(regions), within, not wide)


# -- certificates ------------------------------------------------------------


def _delta_unit(space):
    if isinstance(space, Product):
        return "squared"
    return "turn" if isinstance(space, Circle) else "length"


@dataclass
class SensitivityCertificate:
    """Outcome of a finite-horizon sensitivity decider.

    ``claims`` hold re-checkable witnesses (one common time per region tuple
    with a point pair per component); ``failure`` describes the region tuple
    that had no common time below the horizon.
    """

    property: str
    verdict: str
    delta: Fraction
    horizon: int
    system: str
    space: object
    family: dict
    vectors: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    failure: dict | None = None
    notes: list = field(default_factory=list)
    tuples_total: int = 0

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "property": self.property,
            "verdict": self.verdict,
            "system": self.system,
            "space": space_to_json(self.space),
            "delta": fmt(self.delta),
            "delta_unit": _delta_unit(self.space),
            "horizon": self.horizon,
            "family": self.family,
            "vectors": [list(v) for v in self.vectors],
            "tuples_total": self.tuples_total,
            "claims": self.claims,
            "failure": self.failure,
            "notes": list(self.notes),
        }


def _claim(regions, vector, nsets, n):
    parts = []
    for U, k, ns in zip(regions, vector, nsets):
        w = ns.witness(n)
        parts.append({"region": region_to_json(U), "iterate": k, "u": point_to_json(w.u),
                      "v": point_to_json(w.v), "distance": fmt(w.distance)})
    return {"n": n, "components": parts}


def _lowest(mask):
    return (mask & -mask).bit_length() - 1


def _component_nsets(s, k, regions, delta, horizon):
    sys_k = kth_iterate_system(s, k)
    return _pmap(lambda U: n_set(sys_k, U, delta, horizon), regions)


def _tuple_scan(s, vector, families, delta, horizon):
    """Scan every tuple (U_1 from families[0], ...) for a common separation time.

    Tuples are grouped by their N-set bitmasks so each distinct combination
    is intersected once.  Returns ``(verdict, claims, failure, total)``.
    """
    per = [_component_nsets(s, k, fam, delta, horizon) for k, fam in zip(vector, families)]
    reps = []
    for nsets in per:
        seen = {}
        for idx, ns in enumerate(nsets):
            seen.setdefault(ns.mask, idx)
        reps.append(sorted(seen.items(), key=lambda kv: kv[1]))
    total = 1
    for fam in families:
        total *= len(fam)

    combos = {}
    for combo in itertools.product(*reps):
        common = -1
        for mask, _ in combo:
            common &= mask
        idxs = tuple(i for _, i in combo)
        if common == 0:
            nsets = [per[c][i] for c, i in enumerate(idxs)]
            cut = min((ns.inconclusive_from for ns in nsets if ns.inconclusive_from), default=None)
            failure = {
                "regions": [region_to_json(fam[i]) for fam, i in zip(families, idxs)],
                "vector": list(vector),
                "n_sets": [ns.members for ns in nsets],
                "statement": f"no common separation time n <= {cut - 1 if cut else horizon}",
            }
            return (INCONCLUSIVE if cut else REFUTED), [], failure, total
        combos[tuple(m for m, _ in combo)] = (idxs, _lowest(common))

    claims = []
    if total <= MAX_LISTED_TUPLES:
        for idxs in itertools.product(*(range(len(f)) for f in families)):
            nsets = [per[c][i] for c, i in enumerate(idxs)]
            _, n = combos[tuple(ns.mask for ns in nsets)]
            claims.append(_claim([f[i] for f, i in zip(families, idxs)], vector, nsets, n))
    else:
        for idxs, n in combos.values():
            nsets = [per[c][i] for c, i in enumerate(idxs)]
            claims.append(_claim([f[i] for f, i in zip(families, idxs)], vector, nsets, n))
    return WITNESSED, claims, None, total


def _family_doc(regions):
    return {"kind": "explicit", "regions": [region_to_json(r) for r in regions]}


def _ensure_battery(s, battery, delta, b=5):
    return battery if battery is not None else default_battery(s.space, b, delta=delta)


def vector_multi_sensitivity(s, vector, regions, delta, horizon):
    """Is there one time ``n <= horizon`` separating every ``regions[i]`` under
    the ``vector[i]``-th iterate system?  Explicit regions, one per entry."""
    vector = tuple(vector)
    if not vector or any(k < 1 for k in vector):
        raise ValueError("vector entries must be positive integers")
    if len(vector) != len(regions):
        raise ValueError("need exactly one region per vector entry")
    delta = as_fraction(delta)
    verdict, claims, failure, total = _tuple_scan(s, vector, [[U] for U in regions], delta, horizon)
    return SensitivityCertificate(f"vector-multi{list(vector)}", verdict, delta, horizon, s.name,
                                  s.space, _family_doc(regions), [vector], claims, failure,
                                  tuples_total=total)


def vector_multi_sensitivity_battery(s, vector, delta, horizon, battery=None, tag=None):
    """Vector multi-sensitivity for every tuple of battery regions."""
    vector = tuple(vector)
    if not vector or any(k < 1 for k in vector):
        raise ValueError("vector entries must be positive integers")
    delta = as_fraction(delta)
    battery = _ensure_battery(s, battery, delta)
    fam = list(battery.regions)
    verdict, claims, failure, total = _tuple_scan(s, vector, [fam] * len(vector), delta, horizon)
    notes = [] if battery.fine_enough else [
        "battery regions are wider than delta; a witnessed verdict may reflect region width"]
    return SensitivityCertificate(tag or f"vector-multi{list(vector)}", verdict, delta, horizon,
                                  s.name, s.space, battery.describe(), [vector], claims, failure,
                                  notes, total)


def sensitivity(s, delta, horizon, battery=None):
    return vector_multi_sensitivity_battery(s, (1,), delta, horizon, battery, tag="sensitive")


def multi_sensitivity(s, r, delta, horizon, battery=None):
    """Common separation time for every r-tuple of battery regions."""
    return vector_multi_sensitivity_battery(s, (1,) * r, delta, horizon, battery, tag=f"multi({r})")


def n_sensitivity(s, n, delta, horizon, battery=None):
    """Vector multi-sensitivity with respect to (1, 2, ..., n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return vector_multi_sensitivity_battery(s, tuple(range(1, n + 1)), delta, horizon, battery,
                                            tag=f"n-sensitive({n})")


def strong_multi_sensitivity(s, family, delta, horizon, battery=None):
    """Witnessed only when every vector of the finite ``family`` is witnessed."""
    delta = as_fraction(delta)
    battery = _ensure_battery(s, battery, delta)
    family = [tuple(v) for v in family]
    claims, failure, verdict, total = [], None, WITNESSED, 0
    for v in family:
        cert = vector_multi_sensitivity_battery(s, v, delta, horizon, battery)
        total += cert.tuples_total
        claims.append({"vector": list(v), "verdict": cert.verdict, "claims": cert.claims})
        if cert.verdict != WITNESSED:
            failure = failure or cert.failure
            if cert.verdict == REFUTED:
                verdict = REFUTED
            elif verdict == WITNESSED:
                verdict = INCONCLUSIVE
    notes = ["the universal quantifier over vectors is approximated by the listed family"]
    return SensitivityCertificate("strong-multi", verdict, delta, horizon, s.name, s.space,
                                  battery.describe(), family, claims, failure, notes, total)


def cofinite_sensitivity(s, delta, horizon, tail, battery=None):
    """Evidence for cofiniteness: every region is separated at each of the last ``tail`` times."""
    if not 1 <= tail <= horizon:
        raise ValueError("need 1 <= tail <= horizon")
    delta = as_fraction(delta)
    battery = _ensure_battery(s, battery, delta)
    want = set(range(horizon - tail + 1, horizon + 1))
    nsets = _pmap(lambda U: n_set(s, U, delta, horizon), battery.regions)
    claims, failure, verdict = [], None, WITNESSED
    for ns in nsets:
        missing = sorted(want - set(ns.members))
        if missing:
            verdict = INCONCLUSIVE if ns.inconclusive_from else REFUTED
            failure = {"regions": [region_to_json(ns.region)], "missing": missing,
                       "n_sets": [ns.members],
                       "statement": f"separation fails at {len(missing)} of the last {tail} times"}
            break
        w = ns.witness(horizon)
        claims.append({"region": region_to_json(ns.region), "tail": [min(want), horizon],
                       "witness": w.to_json()})
    notes = ["cofiniteness is not decidable at a finite horizon; the tail check is evidence"]
    return SensitivityCertificate(f"cofinite(tail={tail})", verdict, delta, horizon, s.name,
                                  s.space, battery.describe(), [], claims if verdict == WITNESSED else [],
                                  failure, notes, len(battery.regions))


def largest_witnessed_delta(decide, grid=None):
    """Largest ``delta`` in ``grid`` (default 1/2, 1/4, ..., 1/1024) that ``decide`` witnesses.

    ``decide`` maps a threshold to a certificate.  Returns ``(delta, cert)``
    or ``(None, None)``.
    """
    grid = grid or [Fraction(1, 2**j) for j in range(1, 11)]
    for d in sorted((as_fraction(g) for g in grid), reverse=True):
        cert = decide(d)
        if cert.verdict == WITNESSED:
            return d, cert
    return None, None


# -- bridge checks -----------------------------------------------------------


def _common_members(s, vector, regions, delta, horizon):
    common = None
    for k, U in zip(vector, regions):
        ms = set(n_set(kth_iterate_system(s, k), U, delta, horizon).members)
        common = ms if common is None else common & ms
    return common or set()


@dataclass
class InclusionReport:
    holds: bool
    product_common: list
    factor_union: list
    missing: list


def product_nset_inclusion_check(s, t, v, v2, regions_s, regions_t, delta, horizon):
    """Check that common separation times of the product contain those of either factor.

    The product uses the squared threshold ``delta**2``; each factor uses ``delta``.
    """
    if not len(v) == len(v2) == len(regions_s) == len(regions_t):
        raise ValueError("vectors and region lists must have the same arity")
    delta = as_fraction(delta)
    left = _common_members(s, v, regions_s, delta, horizon)
    right = _common_members(t, v2, regions_t, delta, horizon)
    prod = None
    for a, b, U, W in zip(v, v2, regions_s, regions_t):
        ps = product_system(kth_iterate_system(s, a), kth_iterate_system(t, b))
        ms = set(n_set(ps, Box((U, W)), delta * delta, horizon).members)
        prod = ms if prod is None else prod & ms
    union = left | right
    missing = sorted(union - prod)
    return InclusionReport(not missing, sorted(prod), sorted(union), missing)


@dataclass
class BridgeReport:
    """Transfers between a periodic system and its one-period collapse."""

    holds: bool
    period: int
    collapsed_common: list
    system_common: list
    expanded_common: list
    forward_failures: list
    backward_failures: list


def periodic_bridge_check(s, vector, regions, delta, horizon):
    """Compare separation times of a k-periodic system with those of its collapse ``g``.

    Forward: a common time ``n`` for ``g`` (with ``k*n <= horizon``) must be a
    common time ``k*n`` for the system, since ``g^(n v) = f_1^(k n v)``.
    Backward: a common time of the system for the expanded vector
    ``(v_1, 2v_1, ..., k v_1, v_2, ...)`` over regions repeated k times must
    be a common time for ``g``.
    """
    from .nds import NDSystem, periodic_collapse

    if s.period is None:
        raise ValueError("periodic_bridge_check needs a periodic system")
    k = s.period
    delta = as_fraction(delta)
    g = periodic_collapse(s)
    gs = NDSystem.constant(s.space, g, name=f"collapse({s.name})")
    g_common = _common_members(gs, vector, regions, delta, horizon)
    s_common = _common_members(s, vector, regions, delta, horizon)
    forward = sorted(n for n in g_common if k * n <= horizon and k * n not in s_common)
    exp_vector = [j * vi for vi in vector for j in range(1, k + 1)]
    exp_regions = [U for U in regions for _ in range(k)]
    e_common = _common_members(s, exp_vector, exp_regions, delta, horizon)
    backward = sorted(n for n in e_common if n not in g_common)
    return BridgeReport(not forward and not backward, k, sorted(g_common), sorted(s_common),
                        sorted(e_common), forward, backward)


# -- transitivity ------------------------------------------------------------


@dataclass
class TransitivityResult:
    verdict: str
    k: int | None
    horizon: int
    count: int


def _transitivity_times(s, pairs, horizon, first_only):
    m = len(pairs)
    if m < 1:
        raise ValueError("need at least one pair of regions")
    tracks = [_track(s, check_region(s.space, U)) for U, _ in pairs]
    for _, V in pairs:
        check_region(s.space, V)
    for k in range(1, horizon + 1):
        if all(regions_intersect(t.image(i * k), V)
               for i, (t, (_, V)) in enumerate(zip(tracks, pairs), start=1)):
            yield k
            if first_only:
                return


def multi_transitivity_witness(s, pairs, horizon):
    """Smallest ``k <= horizon`` with ``f_1^(i k)(U_i)`` meeting ``V_i`` for every i."""
    k = next(_transitivity_times(s, pairs, horizon, True), None)
    return TransitivityResult(WITNESSED if k else REFUTED, k, horizon, 1 if k else 0)


def witness_count(s, pairs, horizon):
    """Number of ``k <= horizon`` that satisfy the multi-transitivity condition."""
    return sum(1 for _ in _transitivity_times(s, pairs, horizon, False))


# -- hypotheses and periodic points -----------------------------------------


@dataclass
class HypothesisRow:
    name: str
    passed: bool
    first_violation: int | None = None
    detail: str = ""


@dataclass
class HypothesisReport:
    rows: list
    convergence: object

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def row(self, name):
        return next(r for r in self.rows if r.name == name)


def convergence_hypothesis_report(s, limit=None, n_max=8, k_max=4, eps=Fraction(0)):
    """Check surjectivity and feeble openness of the first ``n_max`` maps and
    collective convergence of their powers to those of ``limit``."""
    from .nds import uniform_convergence_report

    limit = limit if limit is not None else s.limit
    if limit is None:
        raise ValueError("no limit map given")
    rows = []
    for name, pred in (("surjective", lambda f: f.is_surjective(s.space)),
                       ("feebly-open", lambda f: f.is_feebly_open())):
        bad = next((i for i in range(1, n_max + 1) if not pred(s.map(i))), None)
        rows.append(HypothesisRow(name, bad is None, bad))
    conv = uniform_convergence_report(s, limit, n_max, k_max, eps)
    rows.append(HypothesisRow("collective-convergence", conv.tail_start is not None, None,
                              f"rows n >= {conv.tail_start} within {conv.eps}" if conv.tail_start
                              else "no tail of rows within tolerance"))
    return HypothesisReport(rows, conv)


def periodic_point_scan(s, points, max_period, m_max):
    """Points among ``points`` that return to themselves every ``N`` steps for some ``N <= max_period``.

    Density of periodic points cannot be decided this way; the scan only
    collects finite-horizon hits.
    """
    from .nds import is_periodic_point

    hits = []
    for x in points:
        for N in range(1, max_period + 1):
            if is_periodic_point(s, x, N, m_max).holds:
                hits.append((x, N))
                break
    return hits
