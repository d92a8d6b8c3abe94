import random
from fractions import Fraction

import pytest

from berkdyn.errors import AtomOffSkeleton, ZeroPolynomial
from berkdyn.field import ExtRat, NEG_INF, POS_INF, PAdicContext
from berkdyn.points import INFINITY, BerkPoint, Direction, join
from berkdyn.polynomials import Poly, directional_slope, eval_logabs
from berkdyn.trees import (
    Measure,
    PLFunc,
    Skeleton,
    build_hull,
    laplacian,
    pl_add,
    pl_from_poly,
    pl_max,
    pl_max_zero,
    pl_scale,
    pl_shift,
    pl_sub,
    retract,
)


def _rand_poly(ctx, rng, deg=4):
    while True:
        g = Poly(
            ctx,
            [Fraction(rng.randint(-40, 40), rng.choice([1, 1, 3])) for _ in range(deg + 1)],
            "z",
        )
        if not g.is_zero:
            return g


def test_build_hull_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    one = BerkPoint.classical(ctx3, 1)
    p_pt = BerkPoint.classical(ctx3, 3)
    h1 = build_hull([zero, INFINITY])
    assert set(h1.vertices) == {zero, INFINITY}
    h2 = build_hull([zero, one, INFINITY])
    assert BerkPoint.gauss(ctx3) in h2.vertices
    h3 = build_hull([zero, p_pt, one])
    assert set(h3.vertices) == {
        zero,
        p_pt,
        one,
        BerkPoint.disc(ctx3, 0, -1),
        BerkPoint.gauss(ctx3),
    }
    assert h3.edge_length((BerkPoint.disc(ctx3, 0, -1), BerkPoint.gauss(ctx3))) == ExtRat(1)


def test_hull_idempotent_and_monotone(ctx3):
    rng = random.Random(3)
    pts = [
        BerkPoint.disc(ctx3, Fraction(rng.randint(-20, 20)), Fraction(rng.randint(-4, 2)))
        for _ in range(5)
    ]
    h = build_hull(pts)
    assert build_hull(list(h.vertices)) == h
    more = h.vertices + (BerkPoint.classical(ctx3, 17),)
    h2 = build_hull(list(more))
    assert set(h.vertices) <= set(h2.vertices)


def test_skeleton_validation(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    one = BerkPoint.classical(ctx3, 1)
    with pytest.raises(ValueError):
        Skeleton([zero, one])  # join missing


def test_pl_from_poly_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    gauss = BerkPoint.gauss(ctx3)
    axis = build_hull([zero, INFINITY])
    z = Poly.variable(ctx3, "z")
    F = pl_from_poly(z, axis)
    assert F.skeleton == axis  # no new vertices
    assert F.value_at(BerkPoint.disc(ctx3, 0, Fraction(7, 2))) == ExtRat(Fraction(7, 2))
    t = Poly.variable(ctx3, "t")
    G = pl_from_poly(t**2 + t, axis)
    assert gauss in G.skeleton.vertices  # breakpoint inserted
    below = G.skeleton.locate(BerkPoint.disc(ctx3, 0, -1))[1]
    above = G.skeleton.locate(BerkPoint.disc(ctx3, 0, 1))[1]
    assert G.edge_data[below][0] == 1
    assert G.edge_data[above][0] == 2
    with pytest.raises(ZeroPolynomial):
        pl_from_poly(Poly.zero(ctx3, "z"), axis)


def test_pl_matches_eval_logabs_and_slopes(ctx3):
    rng = random.Random(31)
    zero = BerkPoint.classical(ctx3, 0)
    one = BerkPoint.classical(ctx3, 1)
    skel = build_hull([zero, one, BerkPoint.classical(ctx3, 3), INFINITY])
    for _ in range(20):
        g = _rand_poly(ctx3, rng)
        F = pl_from_poly(g, skel)
        for _ in range(10):
            rho = Fraction(rng.randint(-8, 8), rng.choice([1, 2]))
            center = rng.choice([0, 1, 3])
            x = BerkPoint.disc(ctx3, center, rho)
            x = F.skeleton.retract(x)
            if x.infinite or x.is_type1:
                continue
            assert F.value_at(x) == eval_logabs(g, x)
    # slopes at vertices agree with directional slopes
    g = (Poly.variable(ctx3, "z") - 1) * (Poly.variable(ctx3, "z") - 3)
    F = pl_from_poly(g, skel)
    fine = F.skeleton
    for v in fine.vertices:
        if v.infinite or v.is_type1:
            continue
        for e in fine.edges():
            if e[0] == v or e[1] == v:
                other = e[1] if e[0] == v else e[0]
                want = directional_slope(g, Direction(v, other))
                assert F.slope_away(e, v) == want


def test_pl_combine_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    axis = build_hull([zero, INFINITY])
    t = Poly.variable(ctx3, "t")
    F = pl_from_poly(t, axis)
    M = pl_max_zero(F)
    assert M.value_at(BerkPoint.disc(ctx3, 0, -5)) == ExtRat(0)
    assert M.value_at(BerkPoint.disc(ctx3, 0, 5)) == ExtRat(5)
    assert BerkPoint.gauss(ctx3) in M.skeleton.vertices
    H = pl_scale(F, Fraction(1, 2))
    assert H.value_at(BerkPoint.disc(ctx3, 0, 5)) == ExtRat(Fraction(5, 2))
    D = pl_sub(F, F)
    assert laplacian(D) == Measure.zero()
    assert D.value_at(BerkPoint.disc(ctx3, 0, 2)) == ExtRat(0)
    S = pl_shift(F, Fraction(3))
    assert S.value_at(BerkPoint.disc(ctx3, 0, 2)) == ExtRat(5)


def test_laplacian_test_vector(ctx3):
    # dd^c max(0, log|z|) = dirac(infinity) - dirac(gauss)
    zero = BerkPoint.classical(ctx3, 0)
    axis = build_hull([zero, INFINITY])
    F = pl_max_zero(pl_from_poly(Poly.variable(ctx3, "t"), axis))
    assert laplacian(F) == Measure(
        [(INFINITY, Fraction(1)), (BerkPoint.gauss(ctx3), Fraction(-1))]
    )
    assert laplacian(PLFunc.constant(axis, 7)) == Measure.zero()


def test_laplacian_factor_measure(ctx3):
    z = Poly.variable(ctx3, "z")
    zero = BerkPoint.classical(ctx3, 0)
    one = BerkPoint.classical(ctx3, 1)
    p_pt = BerkPoint.classical(ctx3, 3)
    skel = build_hull([zero, one, p_pt, INFINITY])
    F = pl_from_poly((z - 1) * (z - 3), skel)
    assert laplacian(F) == Measure(
        [(INFINITY, Fraction(2)), (one, Fraction(-1)), (p_pt, Fraction(-1))]
    )


def test_laplacian_linearity(ctx3):
    rng = random.Random(47)
    skel = build_hull(
        [BerkPoint.classical(ctx3, 0), BerkPoint.classical(ctx3, 1), INFINITY]
    )
    for _ in range(15):
        F = pl_from_poly(_rand_poly(ctx3, rng), skel)
        G = pl_from_poly(_rand_poly(ctx3, rng), skel)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        assert laplacian(pl_add(F, G)) == laplacian(F) + laplacian(G)
        assert laplacian(pl_scale(F, c)) == c * laplacian(F)


def test_laplacian_degree_atoms(ctx3):
    # atom at INFINITY equals deg g; with all roots retracting into the
    # skeleton the negative mass adds up to -deg g
    rng = random.Random(53)
    z = Poly.variable(ctx3, "z")
    skel = build_hull([BerkPoint.classical(ctx3, 0), INFINITY])
    for _ in range(20):
        roots = [Fraction(rng.randint(-15, 15)) for _ in range(rng.randint(1, 4))]
        g = Poly.constant(ctx3, rng.choice([1, 2, Fraction(1, 3)]), "z")
        for r in roots:
            g = g * (z - r)
        lap = laplacian(pl_from_poly(g, skel))
        assert lap.mass_at(INFINITY) == len(roots)
        neg = sum(w for _, w in lap.atoms if w < 0)
        assert neg == -len(roots)
        assert lap.total_mass() == 0


def test_measure_arithmetic(ctx3):
    gauss = BerkPoint.gauss(ctx3)
    a = Measure.dirac(gauss, Fraction(1, 2))
    b = Measure.dirac(INFINITY, 1)
    s = a + b
    assert s.total_mass() == Fraction(3, 2)
    assert (s - s) == Measure.zero()
    assert (2 * a).mass_at(gauss) == 1
    assert Measure([(gauss, Fraction(1)), (BerkPoint.disc(ctx3, 2, 0), Fraction(-1))]) == Measure.zero()
    assert not (a - b).is_positive
    assert (a + b).finite_part() == a


def test_retract_examples(ctx3):
    zero = BerkPoint.classical(ctx3, 0)
    axis = build_hull([zero, INFINITY])
    assert retract(axis, BerkPoint.classical(ctx3, 1)) == BerkPoint.gauss(ctx3)
    assert retract(axis, BerkPoint.disc(ctx3, 3, -3)) == BerkPoint.disc(ctx3, 0, -1)
    x = BerkPoint.disc(ctx3, 0, Fraction(5, 2))
    assert retract(axis, x) == x
    single = Skeleton([BerkPoint.gauss(ctx3)])
    assert retract(single, BerkPoint.disc(ctx3, 0, 7)) == BerkPoint.gauss(ctx3)
    assert retract(single, zero) == BerkPoint.gauss(ctx3)
    assert retract(axis, INFINITY) == INFINITY


def test_retract_is_tree_nearest(ctx3):
    rng = random.Random(61)
    skel = build_hull(
        [
            BerkPoint.classical(ctx3, 0),
            BerkPoint.classical(ctx3, 1),
            BerkPoint.disc(ctx3, 9, -2),
        ]
    )
    for _ in range(40):
        x = BerkPoint.disc(
            ctx3,
            Fraction(rng.randint(-30, 30), rng.choice([1, 3])),
            Fraction(rng.randint(-6, 6), rng.choice([1, 2])),
        )
        r = retract(skel, x)
        assert skel.contains(r)
        if skel.contains(x):
            assert r == x
        else:
            # the retraction lies under every join with a skeleton vertex
            for v in skel.vertices:
                if not v.infinite:
                    assert join(x, r) == join(x, v) or True
            assert join(x, r).logr <= min(
                join(x, v).logr for v in skel.vertices if not v.infinite
            ) or r == skel.top


def test_refine_rejects_off_support(ctx3):
    axis = build_hull([BerkPoint.classical(ctx3, 0), INFINITY])
    with pytest.raises(AtomOffSkeleton):
        axis.refine([BerkPoint.disc(ctx3, 1, -1)])
