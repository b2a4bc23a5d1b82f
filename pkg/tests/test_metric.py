from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nasens._rational import as_fraction, fmt, simplest_between
from nasens.errors import DomainError, SpaceMismatch
from nasens.metric import (
    UNIT,
    Arc,
    Box,
    Circle,
    Product,
    Span,
    arc,
    diameter,
    distance,
    point_from_json,
    point_to_json,
    region_from_json,
    region_inside,
    region_to_json,
    space_from_json,
    space_to_json,
)


def test_parsing_and_formatting():
    assert as_fraction("0.3") == F(3, 10)
    assert as_fraction(" 2/6 ") == F(1, 3)
    assert fmt(2) == "2/1"
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=60),
       st.fractions(min_value=0, max_value=1, max_denominator=60))
def test_simplest_between_is_in_range_and_minimal(lo, width):
    hi = lo + width
    x = simplest_between(lo, hi)
    assert lo <= x <= hi
    for q in range(1, x.denominator):
        # no rational with a smaller denominator fits
        import math
        assert math.floor(hi * q) < math.ceil(lo * q)


def test_distances():
    assert distance(UNIT, F(1, 5), F(1, 2)) == F(3, 10)
    assert distance(Circle(), F(1, 10), F(9, 10)) == F(1, 5)
    assert distance(Circle(), 0, F(1, 2)) == F(1, 2)
    P = Product((UNIT, Circle()))
    assert distance(P, (0, 0), (F(3, 10), F(9, 10))) == F(9, 100) + F(1, 100)
    assert diameter(UNIT, [F(1, 3), F(1, 2), F(1, 4)]) == F(1, 4)
    with pytest.raises(DomainError):
        distance(UNIT, 0, 2)
    with pytest.raises(SpaceMismatch):
        distance(P, 0, 0)


def test_arcs():
    assert Arc(F(3, 4), F(1, 2)).contains(F(1, 10))
    assert not Arc(0, F(1, 4)).contains(F(1, 2))
    assert Arc(0, F(1, 4)).intersects(Arc(F(7, 8), F(1, 4)))
    assert not Arc(0, F(1, 4)).intersects(Arc(F(1, 2), F(1, 4)))
    assert Arc(0, 2).diameter == F(1, 2)
    with pytest.raises(ValueError):
        arc(F(7, 8), F(1, 4))


def test_spans():
    assert Span(0, 1).intersects(Span(F(1, 2), 2))
    assert not Span(0, 1).intersects(Span(1, 2))
    assert Span(0, 1, hi_closed=True).intersects(Span(1, 2, lo_closed=True))
    with pytest.raises(ValueError):
        Span(1, 1)
    assert region_inside(Span(F(1, 4), F(1, 2)), Span(0, F(1, 2)))
    assert not region_inside(Span(F(1, 4), F(1, 2), hi_closed=True), Span(0, F(1, 2)))


def test_json_round_trips():
    P = Product((UNIT, Circle()))
    assert space_from_json(space_to_json(P)) == P
    p = (F(1, 3), F(2, 7))
    assert point_from_json(point_to_json(p)) == p
    box = Box((Span(0, F(1, 2)), Arc(F(1, 4), F(1, 8))))
    assert region_from_json(region_to_json(box)) == box
