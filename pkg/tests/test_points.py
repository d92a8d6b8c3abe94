import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkdyn.errors import InfinityNotAllowed, KernelPole, TypeOnePoint
from berkdyn.field import NEG_INF, ExtRat, PAdicContext
from berkdyn.points import (
    INFINITY,
    BerkPoint,
    Direction,
    generalized_hsia,
    hsia_inf,
    join,
    leq,
    minimal_center,
    path_length,
    spherical,
)

centers = st.fractions(min_value=-200, max_value=200, max_denominator=40)
radii = st.one_of(
    st.just(NEG_INF),
    st.fractions(min_value=-6, max_value=6, max_denominator=6).map(ExtRat),
)


def points(p):
    ctx = PAdicContext(p)
    return st.builds(lambda c, r: BerkPoint(ctx, c, r), centers, radii)


def test_leq_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    gauss = BerkPoint.gauss(ctx3)
    assert leq(zero, gauss)
    one = BerkPoint.disc(ctx3, 1, 0)
    assert leq(one, gauss) and leq(gauss, one)  # equal discs
    assert not leq(gauss, BerkPoint.disc(ctx3, 3, -2))
    assert leq(gauss, INFINITY)
    assert not leq(INFINITY, gauss)


def test_join_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    p_pt = BerkPoint.classical(ctx3, 3)
    one = BerkPoint.classical(ctx3, 1)
    assert join(zero, p_pt) == BerkPoint.disc(ctx3, 0, -1)
    assert join(zero, one) == BerkPoint.gauss(ctx3)
    x = BerkPoint.disc(ctx3, 7, Fraction(1, 2))
    assert join(x, x) == x
    assert join(x, INFINITY) == INFINITY


def test_type_classification(ctx3):
    assert BerkPoint.classical(ctx3, 5).type_number() == 1
    assert BerkPoint.gauss(ctx3).type_number() == 2
    assert BerkPoint.disc(ctx3, 0, Fraction(1, 2)).type_number() == 3
    assert INFINITY.type_number() == 1


def test_semantic_equality_and_hash(ctx3):
    # same disc, different written centers
    a = BerkPoint.disc(ctx3, 0, 0)
    b = BerkPoint.disc(ctx3, 2, 0)
    assert a == b and hash(a) == hash(b)
    c = BerkPoint.disc(ctx3, Fraction(1, 2), -1)
    d = BerkPoint.disc(ctx3, Fraction(1, 2) + 9, -1)
    assert c == d and hash(c) == hash(d)
    assert BerkPoint.disc(ctx3, 0, -1) != BerkPoint.disc(ctx3, 1, -1)


def test_hsia_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    p_pt = BerkPoint.classical(ctx3, 3)
    gauss = BerkPoint.gauss(ctx3)
    assert hsia_inf(zero, p_pt) == ExtRat(-1)
    assert hsia_inf(gauss, gauss) == ExtRat(0)
    assert hsia_inf(gauss, BerkPoint.disc(ctx3, 0, -1)) == ExtRat(0)
    with pytest.raises(InfinityNotAllowed):
        hsia_inf(zero, INFINITY)


def test_spherical_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    y = BerkPoint.classical(ctx3, 9)
    gauss = BerkPoint.gauss(ctx3)
    assert spherical(zero, y) == ExtRat(-2)
    assert spherical(gauss, gauss) == ExtRat(0)
    assert spherical(zero, INFINITY) == ExtRat(0)


def test_generalized_hsia_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    p_pt = BerkPoint.classical(ctx3, 3)
    one = BerkPoint.classical(ctx3, 1)
    gauss = BerkPoint.gauss(ctx3)
    assert generalized_hsia(zero, p_pt, INFINITY) == ExtRat(-1)
    diag = generalized_hsia(gauss, gauss, BerkPoint.disc(ctx3, 0, 2))
    assert diag.is_finite
    assert generalized_hsia(one, one, gauss) == NEG_INF
    with pytest.raises(KernelPole):
        generalized_hsia(one, zero, one)


def test_path_length_examples(ctx3):
    gauss = BerkPoint.gauss(ctx3)
    assert path_length(gauss, BerkPoint.disc(ctx3, 0, -2)) == 2
    assert path_length(gauss, gauss) == 0
    assert path_length(gauss, BerkPoint.disc(ctx3, 3, -1)) == 1
    with pytest.raises(TypeOnePoint):
        path_length(gauss, BerkPoint.classical(ctx3, 0))


@pytest.mark.parametrize("p", [2, 5])
@given(data=st.data())
def test_join_laws(p, data):
    x = data.draw(points(p))
    y = data.draw(points(p))
    z = data.draw(points(p))
    j = join(x, y)
    assert j == join(y, x)
    assert leq(x, j) and leq(y, j)
    assert join(x, x) == x
    assert join(join(x, y), z) == join(x, join(y, z))


@pytest.mark.parametrize("p", [2, 5])
@given(data=st.data())
def test_hsia_ultrametric_bound(p, data):
    ctx = PAdicContext(p)
    x = BerkPoint.classical(ctx, data.draw(centers))
    y = BerkPoint.classical(ctx, data.draw(centers))
    z = BerkPoint.classical(ctx, data.draw(centers))
    assert hsia_inf(x, z) <= max(hsia_inf(x, y), hsia_inf(y, z))


@pytest.mark.parametrize("p", [2, 5])
@given(data=st.data())
def test_generalized_hsia_at_infinity_is_hsia(p, data):
    x = data.draw(points(p))
    y = data.draw(points(p))
    assert generalized_hsia(x, y, INFINITY) == hsia_inf(x, y)


@given(data=st.data())
def test_spherical_inversion_invariance(data):
    # on classical units, the spherical kernel is invariant under x -> 1/x
    ctx = PAdicContext(3)
    units = centers.filter(lambda c: c != 0 and ctx.vp(c) == ExtRat(0))
    a = data.draw(units)
    b = data.draw(units)
    x, y = BerkPoint.classical(ctx, a), BerkPoint.classical(ctx, b)
    xi = BerkPoint.classical(ctx, 1 / a)
    yi = BerkPoint.classical(ctx, 1 / b)
    assert spherical(x, y) == spherical(xi, yi)


def test_path_additivity(ctx3):
    rng = random.Random(7)
    for _ in range(50):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        x = BerkPoint.disc(ctx3, a, Fraction(rng.randint(-8, 4), rng.choice([1, 2])))
        z = BerkPoint.disc(ctx3, b, Fraction(rng.randint(-8, 4), rng.choice([1, 2])))
        m = join(x, z)
        assert path_length(x, z) == path_length(x, m) + path_length(m, z)


def test_minimal_center_printing(ctx3, ctx5):
    # the written center need not be minimal-height
    q = BerkPoint.disc(ctx3, 9, -1)  # same disc as center 0
    assert q.canonical_center() == 0
    assert q.label() == "ζ_{0,1/3}"
    # -1 beats its truncation 4 = 5 - 1 in height
    w = BerkPoint.disc(PAdicContext(5), -1, -1)
    assert w.canonical_center() == -1
    assert minimal_center(ctx5, Fraction(4), 1) == -1
    assert minimal_center(ctx3, Fraction(7, 2), 0) == 0


def test_directions(ctx3):
    gauss = BerkPoint.gauss(ctx3)
    zero = BerkPoint.classical(ctx3, 0)
    three = BerkPoint.classical(ctx3, 3)
    one = BerkPoint.classical(ctx3, 1)
    d_zero = Direction(gauss, zero)
    d_three = Direction(gauss, three)  # same residue disc as 0
    d_one = Direction(gauss, one)
    d_out = Direction(gauss, INFINITY)
    d_big = Direction(gauss, BerkPoint.disc(ctx3, 0, 5))  # outward too
    assert d_zero == d_three
    assert d_zero != d_one
    assert d_out == d_big
    assert d_out != d_zero
    with pytest.raises(ValueError):
        Direction(gauss, BerkPoint.disc(ctx3, 1, 0))
