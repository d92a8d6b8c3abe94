"""Exact univariate polynomials and their Newton-polygon evaluation.

This is the computational engine behind every Laplacian and pullback: the
log-absolute value of a polynomial g at the disc point D(a, p**rho) is

    max_i ( logabs(g_i) + i*rho ),        g(z) = sum_i g_i (z - a)**i,

the upper envelope of finitely many lines in rho.  Root counts in discs and
directional slopes of log|g| are read off the attaining indices of that
envelope -- no factorization over an algebraic closure is ever performed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import (
    CtxMismatch,
    DegreeBudgetExceeded,
    InfinityNotAllowed,
    SchemaError,
    TypeOnePoint,
    VarMismatch,
    ZeroPolynomial,
)
from .field import NEG_INF, ExtRat, FieldElement, PAdicContext, parse_rational
from .points import BerkPoint, Direction, leq

# Operations refuse results beyond this degree: iterates grow like d**n and
# desk scale must fail loudly instead of thrashing.
DEGREE_BUDGET = 4096


def _check_budget(deg: int):
    if deg > DEGREE_BUDGET:
        raise DegreeBudgetExceeded(f"degree {deg} exceeds budget {DEGREE_BUDGET}")


class Poly:
    """Univariate polynomial over the coefficient field, tagged by variable.

    ``coeffs[i]`` is the coefficient of the i-th power; trailing zeros are
    trimmed, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("ctx", "var", "coeffs")

    def __init__(self, ctx: PAdicContext, coeffs: Sequence, var: str = "z"):
        self.ctx = ctx
        self.var = var
        cs = [Fraction(c.value if isinstance(c, FieldElement) else c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ctx, var="z"):
        return cls(ctx, (), var)

    @classmethod
    def constant(cls, ctx, c, var="z"):
        return cls(ctx, (c,), var)

    @classmethod
    def variable(cls, ctx, var="z"):
        return cls(ctx, (0, 1), var)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        """Highest index, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _align(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise CtxMismatch("polynomials over different primes")
            if other.var != self.var:
                raise VarMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return Poly.constant(self.ctx, other, self.var)
        return NotImplemented

    def __eq__(self, other):
        other = self._align(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.var, self.coeffs))

    def __add__(self, other):
        other = self._align(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)], self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._align(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._align(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.ctx, self.var)
        _check_budget(self.degree() + other.degree())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(self.ctx, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers are nonnegative integers")
        result = Poly.constant(self.ctx, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner): exact composition; degrees multiply when nonzero."""
        inner = self._align(inner)
        if self.degree() and inner.degree():
            _check_budget(self.degree() * inner.degree())
        result = Poly.zero(self.ctx, self.var)
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def __call__(self, x):
        """Evaluate at a field element or rational."""
        if isinstance(x, FieldElement):
            x = x.value
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return FieldElement(self.ctx, acc)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.ctx, self.coeffs, var)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def taylor_recenter(g: Poly, a) -> tuple[Fraction, ...]:
    """Coefficients of g expanded around a: g(z) = sum_i c_i (z-a)**i.

    Computed by repeated synthetic division; recentering at 0 is the
    identity.
    """
    if isinstance(a, FieldElement):
        a = a.value
    a = Fraction(a)
    if a == 0:
        return tuple(g.coeffs)
    work = list(g.coeffs)
    out = []
    for _ in range(len(work)):
        # synthetic division by (z - a); the remainder is the next coefficient
        acc = Fraction(0)
        quot = [Fraction(0)] * (len(work) - 1)
        for i in range(len(work) - 1, 0, -1):
            acc = acc * a + work[i]
            quot[i - 1] = acc
        out.append(acc * a + work[0])
        work = quot
    return tuple(out)


def _log_lines(g: Poly, a) -> list[tuple[int, Fraction]]:
    """Nonzero Taylor coefficients at a as (index, logabs) line data."""
    if g.is_zero:
        raise ZeroPolynomial("the zero polynomial has no Newton data")
    lines = []
    for i, c in enumerate(taylor_recenter(g, a)):
        if c != 0:
            lines.append((i, g.ctx.elem(c).logabs().as_fraction()))
    return lines


def eval_logabs(g: Poly, x: BerkPoint) -> ExtRat:
    """logabs of g at a Berkovich point: sup of |g| over the disc.

    For D(a, p**rho) this is max_i(logabs(g_i^{(a)}) + i*rho); for a type-1
    point it is logabs(g(a)).  Monotone nondecreasing in rho; the zero
    polynomial evaluates to -inf.
    """
    if x.infinite:
        raise InfinityNotAllowed("eval_logabs needs a finite point")
    if g.is_zero:
        return NEG_INF
    if x.is_type1:
        return g(x.center).logabs()
    rho = x.logr.as_fraction()
    return ExtRat(max(la + i * rho for i, la in _log_lines(g, x.center)))


def _attaining(g: Poly, a, rho: Fraction) -> tuple[int, int]:
    """Smallest and largest index attaining the envelope max at (a, rho)."""
    lines = _log_lines(g, a)
    rho = Fraction(rho)
    best = max(la + i * rho for i, la in lines)
    idx = [i for i, la in lines if la + i * rho == best]
    return min(idx), max(idx)


def count_roots_closed(g: Poly, a, rho) -> int:
    """Roots of g with logabs(z - a) <= rho, with multiplicity.

    Counted over an algebraic closure but computed from the Newton envelope
    alone: the closed count is the largest index attaining the max of the
    envelope at rho.
    """
    if g.is_zero:
        raise ZeroPolynomial("root counts need a nonzero polynomial")
    return _attaining(g, a, rho)[1]


def count_roots_open(g: Poly, a, rho) -> int:
    """Roots of g with logabs(z - a) < rho: the smallest attaining index."""
    if g.is_zero:
        raise ZeroPolynomial("root counts need a nonzero polynomial")
    return _attaining(g, a, rho)[0]


def directional_slope(g: Poly, direction: Direction) -> int:
    """Slope of log|g| along a tree direction at a type-2/3 point.

    Derivative of rho' |-> eval_logabs(g, point at distance rho') moving
    into the direction: toward infinity it is the closed root count of the
    disc, into a residue disc it is minus the open count there.
    """
    at = direction.at
    if at.infinite or at.is_type1:
        raise TypeOnePoint("directional slopes need a type-2/3 base point")
    if g.is_zero:
        raise ZeroPolynomial("directional slopes need a nonzero polynomial")
    rho = at.logr.as_fraction()
    if direction.is_outward:
        return count_roots_closed(g, at.center, rho)
    return -count_roots_open(g, direction.toward.center, rho)


def newton_envelope(g: Poly, a) -> list[tuple[int, Fraction]]:
    """Vertices (index, logabs) of the upper envelope of the log lines.

    Returned in increasing index order; consecutive vertices (i1,v1), (i2,v2)
    cross at rho = (v1 - v2)/(i2 - i1), and the crossing abscissae increase
    along the list.  Line i is maximal for rho below its left crossing and
    above its right one.
    """
    pts = _log_lines(g, a)
    pts.sort()
    hull: list[tuple[int, Fraction]] = []
    for q in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop non-right turns so the hull stays strictly concave from
            # above; collinear middle points drop out (no slope change there)
            if (x2 - x1) * (q[1] - y2) - (y2 - y1) * (q[0] - x2) >= 0:
                hull.pop()
            else:
                break
        hull.append(q)
    return hull


def envelope_breakpoints(hull: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Crossing abscissae between consecutive envelope vertices."""
    out = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        out.append(Fraction(v1 - v2, i2 - i1))
    return out


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial quotient; raises if the division leaves a remainder."""
    if b.is_zero:
        raise ZeroPolynomial("division by the zero polynomial")
    if a.is_zero:
        return a
    rem = list(a.coeffs)
    db, lead = b.degree(), b.coeffs[-1]
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        q = rem[i] / lead
        quot[i - db] = q
        if q != 0:
            for j, c in enumerate(b.coeffs):
                rem[i - db + j] -= q * c
    if any(c != 0 for c in rem[:db]):
        raise ValueError("inexact polynomial division")
    return Poly(a.ctx, quot, a.var)


def sylvester_resultant(ps: Sequence[Poly], qs: Sequence[Poly]) -> Poly:
    """Resultant of two binary forms given by coefficient lists.

    ``ps[j]`` is the coefficient of X**(d-j) Y**j of the first form (entries
    are polynomials in the parameter); both lists must have length d+1.  The
    determinant of the 2d x 2d Sylvester matrix is computed by fraction-free
    Bareiss elimination, so the result is exact.
    """
    if len(ps) != len(qs):
        raise ValueError("forms must have the same degree")
    d = len(ps) - 1
    ctx, var = ps[0].ctx, ps[0].var
    n = 2 * d
    zero = Poly.zero(ctx, var)
    m = [[zero] * n for _ in range(n)]
    for r in range(d):
        for j in range(d + 1):
            m[r][r + j] = ps[j]
            m[d + r][r + j] = qs[j]
    sign = 1
    prev = Poly.constant(ctx, 1, var)
    for k in range(n - 1):
        if m[k][k].is_zero:
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(num, prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


# --- literal syntax -------------------------------------------------------
#
# "c_k*x^k + ... + c_0" with rational coefficients "a/b"; the variable letter
# comes from context.

_TERM_RE = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?(?:(?<=\d)\*)?(?P<var>[A-Za-z])?(?:\^(?P<exp>\d+))?$"
)


def parse_poly(text: str, ctx: PAdicContext, var: str) -> Poly:
    """Parse a polynomial literal such as "t^2 + t" or "-3/2*z^4 + 1"."""
    s = text.replace(" ", "")
    if not s:
        raise SchemaError("empty polynomial literal")
    # split into signed terms at top level
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*^/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        sign, t = 1, term
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        mt = _TERM_RE.match(t)
        if not mt or (mt.group("coef") is None and mt.group("var") is None):
            raise SchemaError(f"bad polynomial term: {term!r} in {text!r}")
        coef_s, var_s, exp_s = mt.group("coef"), mt.group("var"), mt.group("exp")
        coef = sign * (parse_rational(coef_s) if coef_s else Fraction(1))
        if var_s is None:
            if exp_s is not None:
                raise SchemaError(f"exponent without variable: {term!r}")
            exp = 0
        else:
            if var_s != var:
                raise VarMismatch(f"expected variable {var!r}, got {var_s!r}")
            exp = int(exp_s) if exp_s else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + coef
    deg = max(coeffs) if coeffs else 0
    return Poly(ctx, [coeffs.get(i, Fraction(0)) for i in range(deg + 1)], var)


def format_poly(g: Poly) -> str:
    if g.is_zero:
        return "0"
    parts = []
    for i in range(g.degree(), -1, -1):
        c = g.coeff(i)
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            pw = g.var if i == 1 else f"{g.var}^{i}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
