"""Small helpers for exact rational values: parsing, formatting, simplest fractions."""

from fractions import Fraction


def as_fraction(value):
    """Coerce ints, Fractions and decimal / "p/q" strings to a Fraction.

    Floats are refused: they silently carry binary rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def fmt(value):
    """Format a rational as a "p/q" string."""
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def simplest_between(lo, hi):
    """Return the smallest-denominator rational in the closed interval [lo, hi].

    Iterative continued-fraction descent, so deep expansions do not hit the
    recursion limit.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    sign = 1
    if hi < 0:
        lo, hi, sign = -hi, -lo, -1
    elif lo <= 0:
        return Fraction(0)
    terms = []
    while True:
        fl = lo.numerator // lo.denominator
        if fl == lo:
            x = Fraction(fl)
            break
        if fl + 1 <= hi:
            x = Fraction(fl + 1)
            break
        terms.append(fl)
        lo, hi = 1 / (hi - fl), 1 / (lo - fl)
    for t in reversed(terms):
        x = t + 1 / x
    return sign * x
