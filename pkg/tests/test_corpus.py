from fractions import Fraction as F

import pytest

from nasens import corpus
from nasens.nds import partial_composition
from nasens.plmap import CircleMap, structurally_equal


@pytest.mark.parametrize("name", corpus.names())
def test_entries_pass_their_own_checks(name):
    assert corpus.entry(name).self_check() == []


def test_aliases_and_unknown_names():
    assert corpus.build("ex3.2").name == "circle-multipliers"
    assert corpus.build("ex4.3").name == "collapsing-limit"
    with pytest.raises(KeyError):
        corpus.build("no-such-system")


def test_circle_entries():
    h = corpus.circle_multipliers_system()
    assert partial_composition(h, 1, 5).multiplier == 3
    assert partial_composition(h, 1, 6) == CircleMap(1)
    assert all(h.map(i).multiplier > 0 for i in range(1, 30))
    assert corpus.expanding_block(4).multiplier == 4
    assert corpus.contracting_block(4).multiplier == F(1, 4)


def test_homeomorphisms_hit_their_points():
    seen = set()
    for n in range(1, 40):
        a, b, c, d = corpus.homeomorphism_tuple(n)
        assert len({a, b, c, d}) == 4 and all(0 < x < 1 for x in (a, b, c, d))
        f = corpus.homeomorphism(n)
        assert f.eval(a) == c and f.eval(b) == d
        assert f.inverse().eval(c) == a
        seen.add((a, b, c, d))
    assert len(seen) == 39
    s = corpus.homeomorphism_blocks_system()
    assert structurally_equal(partial_composition(s, 1, 4), corpus.PLMap.identity(corpus.UNIT))


def test_tent_quadratic_entries():
    s = corpus.tent_quadratic_system()
    f = s.map(1)
    assert f.eval(F(3, 2)) == 1
    assert f.eval(F(1, 4)) == F(1, 2)
    g = s.limit
    assert s.map(2) == g and s.map(9) == g
    assert g.slopes[-1] == 1
    assert g.eval(F(7, 4)) - g.eval(F(5, 4)) == F(1, 2)


def test_collapsing_entries():
    f1, f2, f = corpus.collapsing_maps()
    s = corpus.collapsing_limit_system()
    assert f.eval(F(1, 3)) == F(1, 3)
    assert (s.map(1), s.map(2), s.map(3)) == (f1, f2, f)
    from nasens.plmap import sup_distance
    assert sup_distance(s.map(2), f) == F(2, 3)


def test_random_systems_are_reproducible():
    a = corpus.random_pl_system(11, period=3, pieces=4)
    b = corpus.random_pl_system(11, period=3, pieces=4)
    assert a.maps(1, 6) == b.maps(1, 6)
    assert a.map(2) == a.map(5)
    for f in a.maps(1, 3):
        assert all(0 <= y <= 1 for y in f.ys)
        assert len(f.xs) <= 5
    with pytest.raises(ValueError):
        corpus.random_pl_system(1, period=0)
