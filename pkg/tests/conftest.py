import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nasens.measure import AtomicMeasure
from nasens.metric import UNIT, Circle
from nasens.plmap import PLMap

settings.register_profile(
    "fixed-seed",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed-seed")

# property-test outcomes for the suite-level acceptance criterion
PROPERTY_OUTCOMES = pytest.StashKey[dict]()
SESSION_START = pytest.StashKey[float]()
LAST = "test_criterion_11_invariant_suites"


def pytest_configure(config):
    config.stash[SESSION_START] = time.perf_counter()
    config.stash[PROPERTY_OUTCOMES] = {}


def pytest_collection_modifyitems(config, items):
    items.sort(key=lambda item: item.name == LAST)


def _is_property_test(item):
    return getattr(getattr(item, "obj", None), "is_hypothesis_test", False)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and _is_property_test(item):
        own = getattr(item.obj, "_hypothesis_internal_use_settings", settings.default)
        ok = report.passed and own.max_examples >= 1000
        item.config.stash[PROPERTY_OUTCOMES][item.nodeid] = ok

GRID = 24


def unit_rationals(den=GRID):
    return st.integers(0, den).map(lambda k: Fraction(k, den))


@st.composite
def pl_maps(draw, max_pieces=4, den=GRID):
    """Random continuous PL self-maps of [0, 1] on a coarse grid."""
    pieces = draw(st.integers(1, max_pieces))
    inner = draw(st.lists(st.integers(1, den - 1), min_size=pieces - 1, max_size=pieces - 1, unique=True))
    xs = [Fraction(0)] + sorted(Fraction(k, den) for k in inner) + [Fraction(1)]
    ys = draw(st.lists(st.integers(0, den), min_size=len(xs), max_size=len(xs)))
    return PLMap([(x, Fraction(y, den)) for x, y in zip(xs, ys)])


@st.composite
def monotone_pl_maps(draw, max_pieces=4, den=GRID):
    """Random increasing or decreasing PL homeomorphisms of [0, 1]."""
    pieces = draw(st.integers(1, max_pieces))
    xs = sorted(draw(st.lists(st.integers(1, den - 1), min_size=pieces - 1, max_size=pieces - 1, unique=True)))
    ys = sorted(draw(st.lists(st.integers(1, den - 1), min_size=pieces - 1, max_size=pieces - 1, unique=True)))
    pts = [(Fraction(0), Fraction(0))] + [(Fraction(x, den), Fraction(y, den)) for x, y in zip(xs, ys)]
    pts.append((Fraction(1), Fraction(1)))
    if draw(st.booleans()):
        pts = [(x, 1 - y) for x, y in pts]
    return PLMap(pts)


@st.composite
def open_spans(draw, den=GRID):
    a, b = sorted(draw(st.lists(st.integers(0, den), min_size=2, max_size=2, unique=True)))
    from nasens.metric import Span
    return Span(Fraction(a, den), Fraction(b, den))


@st.composite
def atomic_measures(draw, space=UNIT, max_atoms=6, den=20):
    k = draw(st.integers(1, max_atoms))
    top = den - 1 if isinstance(space, Circle) else den
    pts = draw(st.lists(st.integers(0, top), min_size=k, max_size=k))
    raw = draw(st.lists(st.integers(1, 6), min_size=k, max_size=k))
    total = sum(raw)
    return AtomicMeasure(space, [(Fraction(p, den), Fraction(w, total)) for p, w in zip(pts, raw)])
