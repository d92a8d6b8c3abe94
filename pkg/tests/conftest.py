from __future__ import annotations

from fractions import Fraction

import pytest

from berkdyn.field import PAdicContext
from berkdyn.points import INFINITY, BerkPoint
from berkdyn.polynomials import Poly
from berkdyn.trees import build_hull


@pytest.fixture(scope="session")
def ctx3():
    return PAdicContext(3)


@pytest.fixture(scope="session")
def ctx2():
    return PAdicContext(2)


@pytest.fixture(scope="session")
def ctx5():
    return PAdicContext(5)


def quadratic(p: int):
    """The family z**2 + t with marked point 0."""
    from berkdyn.dynamics import PolyFamily

    ctx = PAdicContext(p)
    t = Poly.variable(ctx, "t")
    fam = PolyFamily(ctx, [t, Poly.zero(ctx, "t"), Poly.constant(ctx, 1, "t")])
    return fam, Poly.zero(ctx, "t")


def cubic(p: int):
    """The family z**3 + t with marked point 0."""
    from berkdyn.dynamics import PolyFamily

    ctx = PAdicContext(p)
    t = Poly.variable(ctx, "t")
    zero = Poly.zero(ctx, "t")
    fam = PolyFamily(ctx, [t, zero, zero, Poly.constant(ctx, 1, "t")])
    return fam, zero


def shrinking_quadratic(p: int = 5):
    """(1/p) z**2 + t with marked point 1: escape rates genuinely move in n."""
    from berkdyn.dynamics import PolyFamily

    ctx = PAdicContext(p)
    t = Poly.variable(ctx, "t")
    fam = PolyFamily(
        ctx, [t, Poly.zero(ctx, "t"), Poly.constant(ctx, Fraction(1, p), "t")]
    )
    return fam, Poly.constant(ctx, 1, "t")


def family_fixtures():
    """(family, marked, skeletons) triples used across the suite."""
    out = []
    for p in (3, 2):
        fam, marked = quadratic(p)
        ctx = fam.ctx
        zero = BerkPoint.classical(ctx, 0)
        one = BerkPoint.classical(ctx, 1)
        high = BerkPoint.disc(ctx, 0, 2)
        out.append(
            (
                fam,
                marked,
                [
                    build_hull([zero, INFINITY]),
                    build_hull([zero, one, high, INFINITY]),
                ],
            )
        )
    fam, marked = cubic(3)
    ctx = fam.ctx
    out.append(
        (
            fam,
            marked,
            [build_hull([BerkPoint.classical(ctx, 0), INFINITY])],
        )
    )
    fam, marked = shrinking_quadratic(5)
    ctx = fam.ctx
    out.append(
        (
            fam,
            marked,
            [
                build_hull(
                    [
                        BerkPoint.classical(ctx, 0),
                        BerkPoint.classical(ctx, 1),
                        INFINITY,
                    ]
                )
            ],
        )
    )
    return out
