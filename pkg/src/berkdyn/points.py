"""Points of the Berkovich projective line over (Q, v_p).

A finite point is a closed disc ``D(center, p**logr)``; ``logr = -inf``
gives the classical point at the center (type 1), an integer ``logr`` a
type-2 point and a non-integer rational one a type-3 point (classification
relative to the backend value group Z; over an algebraically closed field
the value group is dense and only the reporting would change).  ``INFINITY``
is the point at infinity.  Type-4 points are not representable: they never
arise as joins, breakpoints or pullback atoms of the operations implemented
here.

Point equality is semantic -- two discs are equal when they contain each
other -- so every point carries a canonical key obtained by truncating the
p-adic expansion of its center below the disc radius.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InfinityNotAllowed, KernelPole, TypeOnePoint
from .field import NEG_INF, ExtRat, FieldElement, PAdicContext


def _truncate_center(ctx: PAdicContext, a: Fraction, m: int) -> Fraction:
    """Canonical representative of a modulo {x : v_p(x) >= m}.

    Truncates the p-adic expansion of ``a`` below p**m; two rationals have
    equal truncations iff their difference has valuation >= m.
    """
    v = ctx.vp(a)
    if v >= m:
        return Fraction(0)
    vi = int(v.as_fraction())
    p = ctx.p
    unit = a / Fraction(p) ** vi
    k = m - vi
    pk = p ** k
    r = unit.numerator * pow(unit.denominator, -1, pk) % pk
    return Fraction(r) * Fraction(p) ** vi


def _gauss_reduce(u, w):
    # Lagrange-Gauss reduction of a rank-2 integer lattice basis (L2 norm).
    def n2(v):
        return v[0] * v[0] + v[1] * v[1]

    while True:
        if n2(u) > n2(w):
            u, w = w, u
        dot = u[0] * w[0] + u[1] * w[1]
        if n2(u) == 0:
            return u, w
        t = round(Fraction(dot, n2(u)))
        w = (w[0] - t * u[0], w[1] - t * u[1])
        if n2(w) >= n2(u):
            return u, w


def _height(b: Fraction):
    return (abs(b.numerator) + b.denominator, b)


def minimal_center(ctx: PAdicContext, a: Fraction, m: int) -> Fraction:
    """Minimal-height rational b with v_p(a - b) >= m.

    Height is |numerator| + denominator; ties resolved by numeric order.
    Candidates come from a Lagrange-Gauss-reduced basis of the congruence
    lattice, searched over a small coefficient window.
    """
    if ctx.vp(a) >= m:
        return Fraction(0)
    v = int(ctx.vp(a).as_fraction())
    p = ctx.p
    scale = Fraction(p) ** v
    alpha = a / scale
    k = m - v
    pk = p ** k
    abar = alpha.numerator * pow(alpha.denominator, -1, pk) % pk
    u, w = _gauss_reduce((abar, 1), (pk, 0))
    best = None
    candidates = set()
    for c1 in range(-4, 5):
        for c2 in range(-4, 5):
            candidates.add((c1 * u[0] + c2 * w[0], c1 * u[1] + c2 * w[1]))
    candidates.add((abar, 1))
    candidates.add((abar - pk, 1))
    for x, y in candidates:
        if y == 0:
            continue
        beta = Fraction(x, y)
        if ctx.vp(alpha - beta) < k:
            continue
        b = scale * beta
        if best is None or _height(b) < _height(best):
            best = b
    assert best is not None
    return best


class BerkPoint:
    """A point of the Berkovich projective line.

    Construct through :meth:`disc`, :meth:`classical`, :meth:`gauss` or the
    module constant ``INFINITY``.
    """

    __slots__ = ("ctx", "center", "logr", "infinite", "_key")

    def __init__(self, ctx, center, logr: ExtRat, infinite: bool = False):
        self.infinite = infinite
        if infinite:
            self.ctx = None
            self.center = None
            self.logr = None
            self._key = ("inf",)
            return
        self.ctx = ctx
        self.center = Fraction(center)
        logr = ExtRat(logr)
        if logr.inf > 0:
            raise ValueError("log-radius +inf is not a point")
        self.logr = logr
        if logr.inf < 0:
            self._key = ("pt", self.center)
        else:
            rho = logr.as_fraction()
            m = math.ceil(-rho)
            self._key = ("disc", _truncate_center(ctx, self.center, m), rho)

    @classmethod
    def disc(cls, ctx: PAdicContext, center, logr) -> "BerkPoint":
        """The sup-norm point of the closed disc D(center, p**logr)."""
        return cls(ctx, center, ExtRat(logr))

    @classmethod
    def classical(cls, ctx: PAdicContext, center) -> "BerkPoint":
        """The type-1 point at a rational center."""
        return cls(ctx, center, NEG_INF)

    @classmethod
    def gauss(cls, ctx: PAdicContext) -> "BerkPoint":
        return cls(ctx, 0, ExtRat(0))

    @property
    def is_type1(self) -> bool:
        return not self.infinite and self.logr.inf < 0

    def type_number(self) -> int:
        """1, 2 or 3 for finite points; 1 for INFINITY (a classical point)."""
        if self.infinite or self.logr.inf < 0:
            return 1
        return 2 if self.logr.as_fraction().denominator == 1 else 3

    def _check_ctx(self, other: "BerkPoint"):
        if self.ctx is not None and other.ctx is not None and self.ctx != other.ctx:
            from .errors import CtxMismatch

            raise CtxMismatch("points over different primes")

    def __eq__(self, other):
        if not isinstance(other, BerkPoint):
            return NotImplemented
        self._check_ctx(other)
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def canonical_center(self) -> Fraction:
        """Minimal-height center among all centers of the same disc."""
        if self.infinite:
            raise InfinityNotAllowed("INFINITY has no center")
        if self.logr.inf < 0:
            return self.center
        m = math.ceil(-self.logr.as_fraction())
        return minimal_center(self.ctx, self.center, m)

    def label(self) -> str:
        """Canonical display form: "0", "ζ_{0,1}", "ζ_{0,3^(1/2)}", "∞"."""
        if self.infinite:
            return "∞"
        c = self.canonical_center()
        if self.logr.inf < 0:
            return str(c)
        rho = self.logr.as_fraction()
        if rho.denominator == 1:
            radius = Fraction(self.ctx.p) ** rho.numerator
            return f"ζ_{{{c},{radius}}}"
        return f"ζ_{{{c},{self.ctx.p}^({rho})}}"

    def sort_key(self):
        if self.infinite:
            return (2, 0, 0, 0, 0)
        c = self.canonical_center()
        if self.logr.inf < 0:
            return (0, c.numerator, c.denominator, 0, 0)
        rho = self.logr.as_fraction()
        return (1, c.numerator, c.denominator, rho.numerator, rho.denominator)

    def __repr__(self):
        return f"BerkPoint({self.label()})"


INFINITY = BerkPoint(None, None, None, infinite=True)


def leq(x: BerkPoint, y: BerkPoint) -> bool:
    """Disc containment: true iff the disc of x is inside the disc of y.

    INFINITY is the maximum of the order.
    """
    if y.infinite:
        return True
    if x.infinite:
        return False
    x._check_ctx(y)
    if x.logr > y.logr:
        return False
    return x.ctx.elem(x.center - y.center).logabs() <= y.logr


def lt(x: BerkPoint, y: BerkPoint) -> bool:
    return leq(x, y) and x != y


def join(x: BerkPoint, y: BerkPoint) -> BerkPoint:
    """Least upper bound: the smallest disc containing both points."""
    if x.infinite or y.infinite:
        return INFINITY
    x._check_ctx(y)
    gap = x.ctx.elem(x.center - y.center).logabs()
    rho = max(gap, x.logr, y.logr)
    if rho.inf < 0:
        # identical type-1 points
        return x
    return BerkPoint.disc(x.ctx, x.center, rho)


def hsia_inf(x: BerkPoint, y: BerkPoint) -> ExtRat:
    """log of the two-point kernel with base point INFINITY.

    Equals logabs(x - y) on classical pairs and the log-diameter on the
    diagonal; it is the log-radius of join(x, y).
    """
    if x.infinite or y.infinite:
        raise InfinityNotAllowed("kernel with base INFINITY needs finite points")
    x._check_ctx(y)
    gap = x.ctx.elem(x.center - y.center).logabs()
    return max(gap, x.logr, y.logr)


def _log_norm(x: BerkPoint) -> ExtRat:
    # log|x| extended to discs: the kernel of x against the point 0
    zero = BerkPoint.classical(x.ctx, 0)
    return hsia_inf(x, zero)


def spherical(x: BerkPoint, y: BerkPoint) -> ExtRat:
    """log of the kernel based at the Gauss point (the spherical kernel).

    Always <= 0, zero on the diagonal at the Gauss point, and -inf exactly
    on classical diagonals.
    """
    if x.infinite and y.infinite:
        return NEG_INF
    if x.infinite or y.infinite:
        fin = y if x.infinite else x
        return -max(ExtRat(0), _log_norm(fin))
    x._check_ctx(y)
    return (
        hsia_inf(x, y)
        - max(ExtRat(0), _log_norm(x))
        - max(ExtRat(0), _log_norm(y))
    )


def generalized_hsia(x: BerkPoint, y: BerkPoint, base: BerkPoint) -> ExtRat:
    """log of the kernel with an arbitrary base point.

    Normalized so that base = INFINITY reproduces :func:`hsia_inf`; the
    additive constant this fixes is irrelevant to (or re-normalized by)
    every downstream energy computation.
    """
    if base.type_number() == 1 and (base == x or base == y):
        raise KernelPole("base point of type 1 collides with an argument")
    return spherical(x, y) - spherical(x, base) - spherical(y, base)


def path_length(x: BerkPoint, y: BerkPoint) -> Fraction:
    """Tree distance between two non-classical finite points.

    Additive along paths; in log-radius coordinates it is
    2*logr(join) - logr(x) - logr(y).
    """
    if x.infinite or y.infinite:
        raise InfinityNotAllowed("path length to INFINITY is infinite")
    if x.is_type1 or y.is_type1:
        raise TypeOnePoint("path length to a type-1 point is infinite")
    d = hsia_inf(x, y) * 2 - x.logr - y.logr
    return d.as_fraction()


class Direction:
    """A tangent direction at a point, identified by a second point.

    Two directions at the same base point are equal iff their witnesses lie
    in the same component of the complement of the base point.
    """

    __slots__ = ("at", "toward", "_branch")

    def __init__(self, at: BerkPoint, toward: BerkPoint):
        if at == toward:
            raise ValueError("direction needs a point distinct from the base")
        self.at = at
        self.toward = toward
        self._branch = self._branch_key()

    def _branch_key(self):
        at, toward = self.at, self.toward
        if at.infinite or at.is_type1:
            return ("only",)
        if not leq(toward, at):
            return ("out",)
        # inward: residue class of the open disc below `at` holding `toward`
        rho = at.logr.as_fraction()
        m = math.floor(-rho) + 1
        return ("in", _truncate_center(at.ctx, toward.center, m))

    @property
    def is_outward(self) -> bool:
        return self._branch == ("out",)

    def __eq__(self, other):
        if not isinstance(other, Direction):
            return NotImplemented
        return self.at == other.at and self._branch == other._branch

    def __hash__(self):
        return hash((self.at, self._branch))

    def __repr__(self):
        return f"Direction({self.at.label()} -> {self.toward.label()})"
