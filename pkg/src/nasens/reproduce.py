"""Regression table over the example corpus.

Each row of ``data/claims.json`` names a check, its parameters and the
expected outcome.  Outcomes are certificate verdicts (``witnessed``,
``refuted-at-horizon``, ``inconclusive``) or, for plain predicates,
``holds`` / ``fails``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import corpus, detect, measure
from ._rational import as_fraction
from .metric import UNIT, Arc, Span
from .nds import NDSystem, orbit, partial_composition, uniform_convergence_report
from .plmap import Composite, PLMap, structurally_equal, sup_distance

F = Fraction


class ClaimsError(ValueError):
    """The claims table is missing, malformed or names an unknown check."""


def _holds(flag):
    return "holds" if flag else "fails"


def _span(pair):
    return Span(as_fraction(pair[0]), as_fraction(pair[1]))


# -- checks ------------------------------------------------------------------


def circle_prefixes(upto):
    s = corpus.circle_multipliers_system()
    return _holds(all(partial_composition(s, 1, 2 * n - 1).multiplier == n
                      and partial_composition(s, 1, 2 * n).multiplier == 1
                      for n in range(1, upto + 1)))


def circle_odd_nset(length, delta, horizon, expected):
    s = corpus.circle_multipliers_system()
    ns = detect.n_set(s, Arc(0, as_fraction(length)), as_fraction(delta), horizon)
    return _holds(ns.members == expected and all(w.n for w in ns.witnesses))


def certify(system, prop, delta, horizon, **kw):
    s = corpus.build(system)
    delta = as_fraction(delta)
    within = _span(kw.pop("within")) if "within" in kw else None
    battery = detect.default_battery(s.space, kw.pop("resolution", 5), within=within, delta=delta)
    if prop == "sensitive":
        cert = detect.sensitivity(s, delta, horizon, battery)
    elif prop == "multi":
        cert = detect.multi_sensitivity(s, kw["r"], delta, horizon, battery)
    elif prop == "n-sensitive":
        cert = detect.n_sensitivity(s, kw["n"], delta, horizon, battery)
    elif prop == "strong-multi":
        cert = detect.strong_multi_sensitivity(s, kw["family"], delta, horizon, battery)
    else:
        raise ClaimsError(f"unknown property {prop!r}")
    return cert.verdict


def limit_sensitivity(system, delta, horizon, family=None):
    """Certify the autonomous system of the attached limit map."""
    base = corpus.build(system)
    s = NDSystem.constant(base.space, base.limit, name=f"limit({base.name})")
    delta = as_fraction(delta)
    if family:
        return detect.strong_multi_sensitivity(s, family, delta, horizon).verdict
    return detect.sensitivity(s, delta, horizon).verdict


def block_identities(upto):
    s = corpus.homeomorphism_blocks_system()
    ident = PLMap.identity(UNIT)
    return _holds(all(structurally_equal(partial_composition(s, 1, 4 * n), ident)
                      and structurally_equal(partial_composition(s, 1, 4 * n - 1), corpus.homeomorphism(n))
                      for n in range(1, upto + 1)))


def block_witnesses(count):
    """Separation at time 4n-1 of a region around a and b at half the gap |c - d|."""
    s = corpus.homeomorphism_blocks_system()
    hits = 0
    for n in range(1, count + 1):
        a, b, c, d = corpus.homeomorphism_tuple(n)
        lo, hi = min(a, b), max(a, b)
        pad = min(lo, 1 - hi) / 2
        ns = detect.n_set(s, Span(lo - pad, hi + pad), abs(c - d) / 2, 4 * n - 1)
        hits += (4 * n - 1) in ns and ns.witness(4 * n - 1).distance > abs(c - d) / 2
    return _holds(hits == count)


def quadratic_agreement(points, upto):
    s = corpus.tent_quadratic_system()
    f = s.map(1)
    grid = [F(2 * j, points - 1) for j in range(points)]
    return _holds(all(partial_composition(s, 1, n).eval(x) == Composite([f] * n).eval(x)
                      for n in range(1, upto + 1) for x in grid))


def hypothesis(system, name, n_max, k_max):
    s = corpus.build(system)
    report = detect.convergence_hypothesis_report(s, s.limit, n_max, k_max)
    return _holds(report.row(name).passed)


def collective_tail(system, n_max, k_max, start):
    s = corpus.build(system)
    rep = uniform_convergence_report(s, s.limit, n_max, k_max)
    return _holds(rep.tail_start == start)


def orbit_collapse(count, steps, seed):
    import random
    rng = random.Random(seed)
    s = corpus.collapsing_limit_system()
    starts = [F(rng.randint(0, 1000), 2000) for _ in range(count)]
    return _holds(all(set(orbit(s, x, steps).points[2:]) == {F(1, 3)} for x in starts))


def transient_distance(expected):
    s = corpus.collapsing_limit_system()
    return _holds(sup_distance(s.map(2), s.limit) == as_fraction(expected))


def tent_nset(region, delta, horizon, expected):
    ns = detect.n_set(corpus.tent_system(), _span(region), as_fraction(delta), horizon)
    return _holds(ns.members == expected)


def tent_transitivity(pairs, horizon, k, min_count):
    s = corpus.tent_system()
    pp = [(_span(u), _span(v)) for u, v in pairs]
    res = detect.multi_transitivity_witness(s, pp, horizon)
    return _holds(res.k == k and detect.witness_count(s, pp, horizon) >= min_count)


def dirac_lifts(system, region, delta, horizon):
    s = corpus.build(system)
    r = Arc(*map(as_fraction, region)) if system in ("circle-multipliers", "ex3.2") else _span(region)
    rep = measure.dirac_lift_sensitivity_bridge(s, [r], as_fraction(delta), horizon)
    return _holds(rep.holds and rep.rows)


def periodic_bridge(block, regions, vector, delta, horizon):
    maps = [corpus.build(name).map(1) for name in block]
    s = NDSystem.periodic(UNIT, maps)
    rep = detect.periodic_bridge_check(s, vector, [_span(r) for r in regions], as_fraction(delta), horizon)
    return _holds(rep.holds)


CHECKS = {f.__name__: f for f in (
    circle_prefixes, circle_odd_nset, certify, limit_sensitivity, block_identities,
    block_witnesses, quadratic_agreement, hypothesis, collective_tail, orbit_collapse,
    transient_distance, tent_nset, tent_transitivity, dirac_lifts, periodic_bridge)}

OUTCOMES = {"witnessed", "refuted-at-horizon", "inconclusive", "holds", "fails"}


# -- table -------------------------------------------------------------------


@dataclass
class Row:
    id: str
    claim: str
    source: str
    expected: str
    verdict: str
    horizon: int | None
    seconds: float

    @property
    def passed(self):
        return self.verdict == self.expected


def load_claims(path=None):
    """Parse and validate the claims table; raises :class:`ClaimsError`."""
    try:
        if path is None:
            text = resources.files("nasens").joinpath("data/claims.json").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ClaimsError(f"cannot read claims: {exc}") from exc
    from .schemas import validate
    try:
        validate(doc, "claims")
    except ValueError as exc:
        raise ClaimsError(str(exc)) from exc
    for row in doc["claims"]:
        if row["check"] not in CHECKS:
            raise ClaimsError(f"row {row['id']}: unknown check {row['check']!r}")
    return doc["claims"]


def run(path=None, only=None):
    rows = []
    for entry in load_claims(path):
        if only and entry["id"] not in only:
            continue
        start = time.perf_counter()
        try:
            verdict = CHECKS[entry["check"]](**entry.get("params", {}))
        except (TypeError, KeyError) as exc:
            raise ClaimsError(f"row {entry['id']}: bad parameters ({exc})") from exc
        rows.append(Row(entry["id"], entry["claim"], entry["source"], entry["expected"], verdict,
                        entry.get("params", {}).get("horizon"), time.perf_counter() - start))
    return rows
