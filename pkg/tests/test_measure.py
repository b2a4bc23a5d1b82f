from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import atomic_measures, pl_maps
from oracles import PROHOROV_GRID, base_distance as _d, prohorov_grid_oracle
from nasens import corpus, measure
from nasens.errors import ResourceError, SpaceMismatch
from nasens.metric import UNIT, Arc, Circle, Product, Span
from nasens.measure import AtomicMeasure, dirac, prohorov_distance, pushforward, uniform

CIRCLE = Circle()


def test_dirac_and_pushforward_examples():
    assert dirac(UNIT, F(1, 2)).atoms == ((F(1, 2), 1),)
    assert dirac(UNIT, F(1, 3)).in_uniform_class(1)
    T = corpus.tent_map()
    assert pushforward(dirac(UNIT, F(1, 5)), T) == dirac(UNIT, F(2, 5))
    assert pushforward(uniform(UNIT, [F(1, 4), F(3, 4)]), T) == dirac(UNIT, F(1, 2))
    mu = uniform(UNIT, [0, F(1, 2), 1])
    assert pushforward(mu, T).atoms == ((0, F(2, 3)), (1, F(1, 3)))
    assert pushforward(mu, corpus.identity_system().map(1)) == mu


def test_prohorov_examples():
    assert prohorov_distance(dirac(UNIT, F(1, 5)), dirac(UNIT, F(1, 2))) == F(3, 10)
    mu = uniform(UNIT, [0, 1])
    assert prohorov_distance(mu, mu) == 0
    assert prohorov_distance(mu, dirac(UNIT, 0)) == F(1, 2)
    assert prohorov_distance(dirac(CIRCLE, F(1, 10)), dirac(CIRCLE, F(9, 10))) == F(1, 5)


def test_measure_validation():
    with pytest.raises(ValueError):
        AtomicMeasure(UNIT, [(0, F(1, 2))])
    with pytest.raises(ValueError):
        AtomicMeasure(UNIT, [(0, 1), (1, 0)])
    assert AtomicMeasure(UNIT, [(0, F(1, 2)), (0, F(1, 2))]).atoms == ((0, 1),)
    with pytest.raises(SpaceMismatch):
        prohorov_distance(dirac(UNIT, 0), dirac(CIRCLE, 0))
    P = Product((UNIT, UNIT))
    with pytest.raises(SpaceMismatch):
        prohorov_distance(dirac(P, (0, 0)), dirac(P, (0, 1)))
    big = uniform(UNIT, [F(j, 20) for j in range(13)])
    with pytest.raises(ResourceError):
        prohorov_distance(big, dirac(UNIT, 0))
    enc = prohorov_distance(big, dirac(UNIT, 0), allow_bounds=True)
    assert enc.lo <= enc.hi


def test_json_round_trip():
    mu = AtomicMeasure(CIRCLE, [(F(1, 3), F(1, 4)), (F(5, 6), F(3, 4))])
    assert AtomicMeasure.from_json(mu.to_json()) == mu


def test_induced_system():
    s = corpus.collapsing_limit_system()
    lifted = measure.induced_system(s)
    orbit = lifted.orbit(dirac(UNIT, F(3, 10)), 6)
    assert all(m == dirac(UNIT, F(1, 3)) for m in orbit[2:])
    T = corpus.tent_system()
    mu = uniform(UNIT, [F(1, 7), F(2, 9)])
    step = measure.induced_system(T).map(1)(mu)
    assert step == measure.induced_system(T).apply(1, mu)
    ball = measure.ProhorovBall(dirac(UNIT, 0), F(1, 4))
    assert ball.contains(dirac(UNIT, F(1, 5))) and not ball.contains(dirac(UNIT, F(1, 4)))


def test_dirac_lift_examples():
    T = corpus.tent_system()
    rep = measure.dirac_lift_sensitivity_bridge(T, [Span(F(3, 10), F(2, 5))], F(1, 2), 10)
    assert rep.holds and [r.n for r in rep.rows] == list(range(3, 11))
    rep = measure.dirac_lift_sensitivity_bridge(corpus.identity_system(), [Span(0, F(1, 4))], F(1, 2), 10)
    assert rep.holds and rep.rows == []
    h = corpus.circle_multipliers_system()
    rep = measure.dirac_lift_sensitivity_bridge(h, [Arc(0, F(1, 8))], F(1, 4), 12)
    assert rep.holds and [r.n for r in rep.rows] == [5, 7, 9, 11]
    with pytest.raises(ValueError):
        measure.dirac_lift_sensitivity_bridge(T, [Span(0, 1)], 1, 4)


# -- properties --------------------------------------------------------------

spaces = st.sampled_from([UNIT, CIRCLE])


@given(st.data())
def test_matches_grid_oracle(data):
    space = data.draw(spaces)
    mu = data.draw(atomic_measures(space))
    nu = data.draw(atomic_measures(space))
    exact = prohorov_distance(mu, nu)
    assert abs(prohorov_grid_oracle(mu, nu) - exact) <= F(1, PROHOROV_GRID)


@given(st.data())
def test_metric_axioms(data):
    space = data.draw(spaces)
    a, b, c = (data.draw(atomic_measures(space, max_atoms=4)) for _ in range(3))
    ab, bc, ac = prohorov_distance(a, b), prohorov_distance(b, c), prohorov_distance(a, c)
    assert ab == prohorov_distance(b, a)
    assert ac <= ab + bc
    assert 0 <= ab <= 1
    assert (ab == 0) == (a == b)


@given(spaces, st.integers(0, 40), st.integers(0, 40))
def test_dirac_distance_is_capped_base_distance(space, i, j):
    a, b = F(i, 40) % (1 if space == CIRCLE else 2), F(j, 40) % (1 if space == CIRCLE else 2)
    if space == UNIT:
        a, b = min(a, 1), min(b, 1)
    assert prohorov_distance(dirac(space, a), dirac(space, b)) == min(_d(space, a, b), 1)


@given(st.data())
def test_one_sided_values_agree(data):
    space = data.draw(spaces)
    mu, nu = data.draw(atomic_measures(space)), data.draw(atomic_measures(space))
    assert measure.prohorov_one_sided(mu, nu) == measure.prohorov_one_sided(nu, mu)


@given(pl_maps(den=12), st.lists(st.integers(0, 12), min_size=1, max_size=8))
def test_pushforward_mass_and_uniform_class(f, idx):
    pts = [F(i, 12) for i in idx]
    mu = uniform(UNIT, pts)
    img = pushforward(mu, f)
    assert sum(img.weights) == 1
    k_in = len(set(pts))
    k_out = len({f.eval(x) for x in set(pts)})
    if len(pts) == k_in and k_out == k_in:
        assert img.in_uniform_class(k_in)
    for y, w in img.atoms:
        assert w == F(sum(1 for x in pts if f.eval(x) == y), len(pts))


@given(st.data())
def test_bounds_bracket_exact(data):
    space = data.draw(spaces)
    mu, nu = data.draw(atomic_measures(space)), data.draw(atomic_measures(space))
    enc = measure.prohorov_bounds(mu, nu)
    assert enc.lo <= prohorov_distance(mu, nu) <= enc.hi
