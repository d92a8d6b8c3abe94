"""Families of polynomials, escape rates and activity measures.

For a family f_t(z) = sum_i a_i(t) z^i of fixed degree d >= 2 with a marked
point c(t), the n-th escape-rate approximant at a parameter point is

    d**(-n) * max(0, log|c_n(t)|),        c_n = n-th iterate of c,

a piecewise-affine function of the parameter whose (negated) Laplacian,
topped up by the degree atom at INFINITY, is the n-th activity-measure
approximant.  Dirac masses pull back through a nonconstant polynomial by
composing its log-absolute value with the kernel of the target point, and
a boundedness locus is certified pointwise: escape through coefficient
dominance, boundedness through good reduction, and otherwise only
"bounded so far" -- no heuristic claims.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AtomOffSkeleton,
    ConstantMarkedOrbit,
    ConstantPolynomial,
    InfinityNotAllowed,
    NonConstantLeadingCoeff,
    NotTypeOne,
    ResultantVanishes,
    SchemaError,
    TypeOneTarget,
    UserInputError,
)
from .field import ExtRat, PAdicContext
from .points import INFINITY, BerkPoint
from .polynomials import (
    Poly,
    envelope_breakpoints,
    eval_logabs,
    newton_envelope,
    sylvester_resultant,
)
from .trees import (
    Measure,
    PLFunc,
    Skeleton,
    laplacian,
    pl_from_poly,
    pl_max,
    pl_max_zero,
    pl_scale,
    pl_shift,
)


class PolyFamily:
    """f_t(z) = sum a_i(t) z^i with constant nonzero leading coefficient.

    The constant nonzero a_d keeps deg f_t = d for every parameter and makes
    INFINITY uniformly superattracting.
    """

    __slots__ = ("ctx", "coeffs", "d")

    def __init__(self, ctx: PAdicContext, coeffs: Sequence[Poly]):
        coeffs = tuple(
            c if isinstance(c, Poly) else Poly.constant(ctx, c, "t") for c in coeffs
        )
        if len(coeffs) < 3:
            raise SchemaError("a family needs degree d >= 2")
        lead = coeffs[-1]
        if lead.is_zero or lead.degree() != 0:
            raise NonConstantLeadingCoeff(
                "the leading coefficient must be a nonzero constant"
            )
        for c in coeffs:
            if c.ctx != ctx or c.var != "t":
                raise SchemaError("coefficients must be polynomials in t")
        self.ctx = ctx
        self.coeffs = coeffs
        self.d = len(coeffs) - 1

    def apply_poly(self, w: Poly) -> Poly:
        """f_t(w(t)) as a polynomial in t."""
        acc = Poly.zero(self.ctx, "t")
        for a in reversed(self.coeffs):
            acc = acc * w + a
        return acc

    def apply_value(self, t_value: Fraction, z: Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * z + a(t_value).value
        return acc

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"PolyFamily(d={self.d}, [{inner}])"


def iterate_marked(fam: PolyFamily, marked: Poly, n: int) -> Poly:
    """c_n(t), the n-th iterate of the marked point under the family."""
    if n < 0:
        raise UserInputError("iterates need n >= 0")
    c = marked
    for _ in range(n):
        c = fam.apply_poly(c)
    return c


def green_value(fam: PolyFamily, marked: Poly, n: int, t: BerkPoint) -> Fraction:
    """The n-th escape-rate approximant d**(-n) max(0, log|c_n|) at t."""
    if n < 1:
        raise UserInputError("the escape rate needs n >= 1")
    if t.infinite:
        raise InfinityNotAllowed("the escape rate is a function of finite points")
    c_n = iterate_marked(fam, marked, n)
    val = eval_logabs(c_n, t)
    top = max(ExtRat(0), val)
    return top.as_fraction() * Fraction(1, fam.d ** n)


def green_pl(fam: PolyFamily, marked: Poly, n: int, skel: Skeleton) -> PLFunc:
    """The n-th escape-rate approximant as a piecewise-affine function."""
    if n < 1:
        raise UserInputError("the escape rate needs n >= 1")
    c_n = iterate_marked(fam, marked, n)
    if c_n.is_zero:
        return PLFunc.constant(skel, 0)
    F = pl_scale(pl_from_poly(c_n, skel), Fraction(1, fam.d ** n))
    return pl_max_zero(F)


def green_tail_bound(fam: PolyFamily, region: Skeleton) -> Fraction:
    """A constant C with |h^(n+1) - h^(n)| <= C d**(-n) on the region.

    C = max(0, max_i sup of log|a_i| over the region); the sup of each
    convex piecewise-affine log|a_i| is attained at the finite vertices, so
    only those are inspected (INFINITY, where coefficients blow up, never
    carries an escape-rate value).
    """
    best = ExtRat(0)
    finite_vertices = [v for v in region.vertices if not v.infinite]
    for a in fam.coeffs:
        for v in finite_vertices:
            best = max(best, eval_logabs(a, v))
    return best.as_fraction()


def activity_measure_approx(
    fam: PolyFamily, marked: Poly, n: int, skel: Skeleton
) -> Measure:
    """The n-th activity-measure approximant, retracted to the skeleton.

    mu_n = d**(-n) deg(c_n) dirac(INFINITY) - laplacian(max(0, d**(-n)
    log|c_n|)); positive on the finite part with total mass
    deg(c_n)/d**n.
    """
    c_n = iterate_marked(fam, marked, n)
    if c_n.is_zero or c_n.degree() == 0:
        raise ConstantMarkedOrbit("the marked orbit is constant in t")
    if not skel.contains(INFINITY):
        raise AtomOffSkeleton("activity measures need INFINITY on the skeleton")
    G = green_pl(fam, marked, n, skel)
    top = Measure.dirac(INFINITY, Fraction(c_n.degree(), fam.d ** n))
    return top - laplacian(G)


def pullback_dirac(g: Poly, target: BerkPoint, skel: Skeleton) -> Measure:
    """g* dirac(target) for a nonconstant polynomial, retracted to skel.

    Computed as deg(g) dirac(INFINITY) - laplacian(max(log|g - b| - s, 0))
    where the target is the disc point D(b, p**s); the max with the disc
    radius makes the value independent of the chosen center b.  Total mass
    is deg(g).
    """
    if target.infinite or target.type_number() == 1:
        raise TypeOneTarget("pullbacks are taken at type-2/3 points")
    if g.is_zero or g.degree() == 0:
        raise ConstantPolynomial("pullback needs a nonconstant polynomial")
    if not skel.contains(INFINITY):
        raise AtomOffSkeleton("pullbacks need INFINITY on the skeleton")
    b = target.center
    sigma = target.logr.as_fraction()
    shifted = pl_shift(pl_from_poly(g - b, skel), -sigma)
    H = pl_max_zero(shifted)
    top = Measure.dirac(INFINITY, Fraction(g.degree()))
    return top - laplacian(H)


@dataclass(frozen=True)
class EscapeResult:
    status: str  # "escaped" | "good_reduction" | "bounded_so_far"
    n: int | None = None

    @classmethod
    def escaped(cls, n: int) -> "EscapeResult":
        return cls("escaped", n)

    @classmethod
    def good_reduction(cls) -> "EscapeResult":
        return cls("good_reduction")

    @classmethod
    def bounded_so_far(cls, n_max: int) -> "EscapeResult":
        return cls("bounded_so_far", n_max)


def escape_threshold(fam: PolyFamily, t_value: Fraction) -> Fraction:
    """Log-radius beyond which iteration is pure d-th powering.

    For log|z| strictly above the threshold, |f_t(z)| = |a_d| |z|**d and the
    orbit is certified to escape: the threshold collects the coefficient
    dominance conditions log|z| > (log|a_i| - log|a_d|)/(d - i) and the
    growth condition log|z| > -log|a_d|/(d - 1).
    """
    ctx, d = fam.ctx, fam.d
    la = [ctx.elem(a(t_value).value).logabs() for a in fam.coeffs]
    lad = la[d].as_fraction()
    bound = Fraction(-lad, d - 1)
    for i in range(d):
        if la[i].is_finite:
            bound = max(bound, Fraction(la[i].as_fraction() - lad, d - i))
    return bound


def mandelbrot_test(
    fam: PolyFamily, marked: Poly, t: BerkPoint, max_iter: int
) -> EscapeResult:
    """Classify a classical parameter: escaped, good reduction, or unknown.

    Escape is certified once an iterate exceeds the dominance threshold;
    boundedness is certified only through good reduction (integral
    coefficients, unit leading coefficient, integral seed); otherwise the
    answer is BoundedSoFar(max_iter).
    """
    if t.infinite or not t.is_type1:
        raise NotTypeOne("the boundedness test runs at classical parameters")
    if max_iter < 1:
        raise UserInputError("max_iter must be >= 1")
    ctx, d = fam.ctx, fam.d
    t_value = t.center
    la = [ctx.elem(a(t_value).value).logabs() for a in fam.coeffs]
    seed = marked(t_value).value
    if (
        all(v <= 0 for v in la)
        and la[d] == ExtRat(0)
        and ctx.elem(seed).logabs() <= 0
    ):
        return EscapeResult.good_reduction()
    threshold = escape_threshold(fam, t_value)
    z = seed
    for k in range(1, max_iter + 1):
        z = fam.apply_value(t_value, z)
        if ctx.elem(z).logabs() > threshold:
            return EscapeResult.escaped(k)
    return EscapeResult.bounded_so_far(max_iter)


@dataclass(frozen=True)
class BoundednessProfile:
    green: PLFunc
    zero_vertices: tuple[BerkPoint, ...]
    positive_vertices: tuple[BerkPoint, ...]
    boundary: tuple[BerkPoint, ...]


def boundedness_profile(
    fam: PolyFamily, marked: Poly, skel: Skeleton, n: int
) -> BoundednessProfile:
    """Partition the skeleton by the zero locus of the n-th escape rate.

    Boundary points are the zero-valued vertices adjacent to the positive
    side; where the tail bound vanishes on the zero region the partition is
    exact for the limit escape rate.
    """
    G = green_pl(fam, marked, n, skel)
    fine = G.skeleton
    zero, positive, boundary = [], [], []
    for v in fine.vertices:
        if G.vertex_values[v] > 0:
            positive.append(v)
        else:
            zero.append(v)
            if any(G.vertex_values[w] > 0 for w in fine.neighbors(v)):
                boundary.append(v)
    return BoundednessProfile(
        green=G,
        zero_vertices=tuple(zero),
        positive_vertices=tuple(positive),
        boundary=tuple(boundary),
    )


def passivity_indicator(
    fam: PolyFamily,
    marked: Poly,
    n: int,
    skel: Skeleton,
    region: Skeleton,
    exclude: Sequence[BerkPoint] = (),
) -> bool:
    """True iff the n-th activity approximant puts no mass on the region.

    ``region`` is a sub-skeleton of ``skel``; vertices listed in ``exclude``
    are treated as outside (so half-open regions like an open segment are
    expressible).  A constant marked orbit is passive everywhere.
    """
    c_n = iterate_marked(fam, marked, n)
    if c_n.is_zero or c_n.degree() == 0:
        return True
    mu = activity_measure_approx(fam, marked, n, skel).finite_part()
    excluded = set(exclude)
    for q, w in mu.atoms:
        if w != 0 and q not in excluded and region.contains(q):
            return False
    return True


class RationalFamilyLift:
    """A homogeneous lift pair (P_t, Q_t) with a marked lift C(t).

    ``p_form[j]`` and ``q_form[j]`` are the coefficients of X**(d-j) Y**j,
    polynomials in the parameter; the coordinate on the line is z = Y/X.
    The resultant of the pair, a polynomial in t, must not vanish
    identically; if it has zeros, a warning lists their Newton-polygon data
    (log-radius and count), since evaluation degenerates there.
    """

    __slots__ = ("ctx", "d", "p_form", "q_form", "marked", "resultant")

    def __init__(
        self,
        ctx: PAdicContext,
        p_form: Sequence[Poly],
        q_form: Sequence[Poly],
        marked: tuple[Poly, Poly],
    ):
        if len(p_form) != len(q_form) or len(p_form) < 3:
            raise SchemaError("forms must share a degree d >= 2")
        self.ctx = ctx
        self.d = len(p_form) - 1
        self.p_form = tuple(p_form)
        self.q_form = tuple(q_form)
        self.marked = (marked[0], marked[1])
        if self.marked[0].is_zero and self.marked[1].is_zero:
            raise SchemaError("the marked lift must not vanish identically")
        self.resultant = sylvester_resultant(self.p_form, self.q_form)
        if self.resultant.is_zero:
            raise ResultantVanishes("the lift pair has identically zero resultant")
        if self.resultant.degree() > 0:
            hull = newton_envelope(self.resultant, 0)
            zero_data = []
            low = hull[0][0]
            if low > 0:
                zero_data.append(("-inf", low))
            for rho, (i1, _), (i2, _) in zip(
                envelope_breakpoints(hull), hull, hull[1:]
            ):
                zero_data.append((str(rho), i2 - i1))
            warnings.warn(
                "lift resultant vanishes on the locus with (logabs, count) = "
                f"{zero_data}",
                stacklevel=2,
            )

    @classmethod
    def from_family(cls, fam: PolyFamily, marked: Poly) -> "RationalFamilyLift":
        one = Poly.constant(fam.ctx, 1, "t")
        zero = Poly.zero(fam.ctx, "t")
        p_form = [one] + [zero] * fam.d
        q_form = list(fam.coeffs)
        return cls(fam.ctx, p_form, q_form, (one, marked))

    def scale_marked(self, phi) -> "RationalFamilyLift":
        """Replace the marked lift C by phi * C for a section phi."""
        if not isinstance(phi, Poly):
            phi = Poly.constant(self.ctx, phi, "t")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return RationalFamilyLift(
                self.ctx,
                self.p_form,
                self.q_form,
                (phi * self.marked[0], phi * self.marked[1]),
            )

    def _eval_form(self, form: Sequence[Poly], x: Poly, y: Poly) -> Poly:
        xs = [Poly.constant(self.ctx, 1, "t")]
        ys = [Poly.constant(self.ctx, 1, "t")]
        for _ in range(self.d):
            xs.append(xs[-1] * x)
            ys.append(ys[-1] * y)
        acc = Poly.zero(self.ctx, "t")
        for j, coeff in enumerate(form):
            if not coeff.is_zero:
                acc = acc + coeff * xs[self.d - j] * ys[j]
        return acc

    def iterate_pair(self, n: int) -> tuple[Poly, Poly]:
        """(P^(n)(C(t)), Q^(n)(C(t))) as polynomials in t."""
        x, y = self.marked
        for _ in range(n):
            x, y = self._eval_form(self.p_form, x, y), self._eval_form(
                self.q_form, x, y
            )
        return x, y


def green_value_rational(lift: RationalFamilyLift, n: int, t: BerkPoint) -> Fraction:
    """d**(-n) log max(|P^(n)(C)|, |Q^(n)(C)|) at a parameter point.

    Differences of these values between points are independent of the
    chosen lifts whenever the scaling section is a unit there.
    """
    if n < 1:
        raise UserInputError("the escape rate needs n >= 1")
    if t.infinite:
        raise InfinityNotAllowed("evaluation needs a finite point")
    if not eval_logabs(lift.resultant, t).is_finite:
        raise ResultantVanishes("the lift degenerates at this parameter")
    a, b = lift.iterate_pair(n)
    top = max(eval_logabs(a, t), eval_logabs(b, t))
    if not top.is_finite:
        raise ResultantVanishes("the marked lift vanishes at this parameter")
    return top.as_fraction() * Fraction(1, lift.d ** n)


def green_pl_rational(lift: RationalFamilyLift, n: int, skel: Skeleton) -> PLFunc:
    """The lift escape-rate approximant as a piecewise-affine function."""
    if n < 1:
        raise UserInputError("the escape rate needs n >= 1")
    a, b = lift.iterate_pair(n)
    if a.is_zero and b.is_zero:
        raise ResultantVanishes("the marked lift vanishes identically")
    if a.is_zero:
        F = pl_from_poly(b, skel)
    elif b.is_zero:
        F = pl_from_poly(a, skel)
    else:
        F = pl_max(pl_from_poly(a, skel), pl_from_poly(b, skel))
    return pl_scale(F, Fraction(1, lift.d ** n))
