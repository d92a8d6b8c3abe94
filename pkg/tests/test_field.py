from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkdyn.errors import CtxMismatch, DivisionByZero, SchemaError
from berkdyn.field import (
    NEG_INF,
    POS_INF,
    ExtRat,
    PAdicContext,
    parse_extrat,
    parse_rational,
)

rationals = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**4)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def test_valuation_examples():
    assert PAdicContext(3).vp(Fraction(9, 2)) == ExtRat(2)
    assert PAdicContext(2).vp(0) == POS_INF
    assert PAdicContext(2).vp(12) == ExtRat(2)


def test_logabs_examples(ctx3, ctx5, ctx2):
    assert ctx3.elem(Fraction(1, 3)).logabs() == ExtRat(1)
    assert ctx5.elem(7).logabs() == ExtRat(0)
    assert ctx2.elem(4).logabs() == ExtRat(-2)


def test_field_ops(ctx3):
    half = ctx3.elem(Fraction(1, 2))
    assert half + half == ctx3.elem(1)
    assert ctx3.elem(3) * ctx3.elem(Fraction(1, 3)) == ctx3.elem(1)
    assert (ctx3.elem(9) + ctx3.elem(1)).logabs() == ExtRat(0)
    assert (ctx3.elem(2) ** -1) == half
    with pytest.raises(DivisionByZero):
        ctx3.elem(1) / ctx3.elem(0)
    with pytest.raises(CtxMismatch):
        ctx3.elem(1) + PAdicContext(5).elem(1)


def test_prime_validation():
    with pytest.raises(SchemaError):
        PAdicContext(4)
    with pytest.raises(SchemaError):
        PAdicContext(1)
    PAdicContext(2)
    PAdicContext(101)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(x=nonzero_rationals, y=nonzero_rationals)
def test_logabs_multiplicative(p, x, y):
    ctx = PAdicContext(p)
    lx = ctx.elem(x).logabs()
    ly = ctx.elem(y).logabs()
    assert ctx.elem(x * y).logabs() == lx + ly


@pytest.mark.parametrize("p", [2, 3, 5])
@given(x=rationals, y=rationals)
def test_ultrametric(p, x, y):
    ctx = PAdicContext(p)
    lx = ctx.elem(x).logabs()
    ly = ctx.elem(y).logabs()
    ls = ctx.elem(x + y).logabs()
    assert ls <= max(lx, ly)
    if lx != ly:
        assert ls == max(lx, ly)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(x=nonzero_rationals, y=nonzero_rationals)
def test_valuation_homomorphism(p, x, y):
    ctx = PAdicContext(p)
    vxy = ctx.vp(x * y)
    assert vxy == ctx.vp(x) + ctx.vp(y)
    assert vxy.as_fraction().denominator == 1  # value group is Z


def test_extrat_arithmetic():
    assert NEG_INF < ExtRat(Fraction(-10**9)) < ExtRat(0) < POS_INF
    assert NEG_INF + ExtRat(5) == NEG_INF
    assert -NEG_INF == POS_INF
    assert max(NEG_INF, ExtRat(2)) == ExtRat(2)
    assert NEG_INF * 3 == NEG_INF
    assert NEG_INF * -2 == POS_INF
    with pytest.raises(ValueError):
        NEG_INF + POS_INF
    with pytest.raises(ValueError):
        NEG_INF * 0


def test_parse_print_round_trip():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert str(ExtRat(Fraction(3, 4))) == "3/4"
    assert str(NEG_INF) == "-inf"
    assert parse_extrat("inf") == POS_INF
    assert parse_extrat("-5/2") == ExtRat(Fraction(-5, 2))
    with pytest.raises(SchemaError):
        parse_rational("x")
