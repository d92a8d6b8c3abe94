"""Exact arithmetic in the rationals carrying a fixed p-adic valuation.

Absolute values are handled additively throughout the package:
``logabs(x) = -v_p(x)``, so ``|x| = p**logabs(x)`` and products become sums.
Disc radii, slopes and energies downstream all live in these base-p
logarithmic units; every identity used is homogeneous in the logarithm, so
results convert to natural-log units by a single factor ln(p).

The backend field is Q with v_p, not an algebraically closed complete field:
its value group is Z, while log-radii of Berkovich points remain free
rational parameters, so type-3 points are representable.  All algorithms
here read only valuations of rational data, which Q carries exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import CtxMismatch, DivisionByZero, SchemaError

RatLike = Union[int, Fraction]

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ExtRat:
    """A rational number extended by +inf and -inf.

    Used for log-absolute values (logabs 0 = -inf), valuations (v(0) = +inf)
    and values of piecewise-affine functions at leaves of a skeleton.
    Addition with the opposite infinity and scaling an infinity by zero are
    rejected rather than given a convention.
    """

    __slots__ = ("inf", "q")

    def __init__(self, value: RatLike | "ExtRat" = 0, inf: int = 0):
        if isinstance(value, ExtRat):
            self.inf = value.inf
            self.q = value.q
            return
        if inf not in (-1, 0, 1):
            raise ValueError("inf flag must be -1, 0 or 1")
        self.inf = inf
        self.q = Fraction(value) if inf == 0 else None

    @property
    def is_finite(self) -> bool:
        return self.inf == 0

    def as_fraction(self) -> Fraction:
        if self.inf != 0:
            raise ValueError("infinite value has no Fraction form")
        return self.q

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.inf != other.inf:
            return False
        return self.inf != 0 or self.q == other.q

    def __hash__(self):
        return hash((self.inf, self.q))

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.inf != other.inf:
            return self.inf < other.inf
        return self.inf == 0 and self.q < other.q

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self == other or self < other

    def __gt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other < self

    def __ge__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other <= self

    def __neg__(self) -> "ExtRat":
        if self.inf != 0:
            return ExtRat(0, -self.inf)
        return ExtRat(-self.q)

    def __add__(self, other) -> "ExtRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.inf != 0 or other.inf != 0:
            if self.inf * other.inf == -1:
                raise ValueError("inf + (-inf) is undefined")
            return ExtRat(0, self.inf if self.inf != 0 else other.inf)
        return ExtRat(self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other) -> "ExtRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExtRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, scalar) -> "ExtRat":
        # scalar must be a finite rational; infinities never multiply here
        if isinstance(scalar, ExtRat):
            if scalar.inf != 0:
                raise ValueError("scaling by an infinity is undefined")
            scalar = scalar.q
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if self.inf != 0:
            if scalar == 0:
                raise ValueError("0 * inf is undefined")
            return ExtRat(0, self.inf if scalar > 0 else -self.inf)
        return ExtRat(self.q * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ExtRat({self})"

    def __str__(self):
        if self.inf > 0:
            return "inf"
        if self.inf < 0:
            return "-inf"
        return str(self.q)


def _coerce(x) -> "ExtRat":
    if isinstance(x, ExtRat):
        return x
    if isinstance(x, (int, Fraction)):
        return ExtRat(x)
    return NotImplemented


NEG_INF = ExtRat(0, -1)
POS_INF = ExtRat(0, 1)


def parse_extrat(s: str) -> ExtRat:
    s = s.strip()
    if s == "inf":
        return POS_INF
    if s == "-inf":
        return NEG_INF
    return ExtRat(parse_rational(s))


def parse_rational(s: str) -> Fraction:
    """Parse "a/b" or "a" in canonical integer form."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational literal: {s!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q)


class PAdicContext:
    """The coefficient field Q together with a fixed prime p.

    Immutable; two contexts interoperate only when their primes agree.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise SchemaError(f"not a prime: {p!r}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("PAdicContext is immutable")

    def __eq__(self, other):
        return isinstance(other, PAdicContext) and self.p == other.p

    def __hash__(self):
        return hash(("PAdicContext", self.p))

    def __repr__(self):
        return f"PAdicContext({self.p})"

    def elem(self, value: RatLike) -> "FieldElement":
        return FieldElement(self, Fraction(value))

    def parse(self, s: str) -> "FieldElement":
        return self.elem(parse_rational(s))

    def vp(self, q: RatLike) -> ExtRat:
        """p-adic valuation of a rational; +inf for 0."""
        q = Fraction(q)
        if q == 0:
            return POS_INF
        v = 0
        n = q.numerator
        while n % self.p == 0:
            n //= self.p
            v += 1
        d = q.denominator
        while d % self.p == 0:
            d //= self.p
            v -= 1
        return ExtRat(v)


def _same_ctx(a: "FieldElement", b: "FieldElement") -> PAdicContext:
    if a.ctx != b.ctx:
        raise CtxMismatch(f"p={a.ctx.p} vs p={b.ctx.p}")
    return a.ctx


class FieldElement:
    """An exact rational seen as an element of the valued field."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: PAdicContext, value: RatLike):
        self.ctx = ctx
        self.value = Fraction(value)

    def valuation(self) -> ExtRat:
        return self.ctx.vp(self.value)

    def logabs(self) -> ExtRat:
        return -self.valuation()

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            _same_ctx(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, -self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.value - other.value)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise DivisionByZero("division by zero in the coefficient field")
        return FieldElement(self.ctx, self.value / other.value)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and self.value == 0:
            raise DivisionByZero("0 has no negative powers")
        return FieldElement(self.ctx, self.value ** n)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement(p={self.ctx.p}, {self.value})"

    def __str__(self):
        return format_rational(self.value)


def valuation(x: FieldElement) -> ExtRat:
    """v_p(x) = v_p(numerator) - v_p(denominator); +inf iff x = 0."""
    return x.valuation()


def logabs(x: FieldElement) -> ExtRat:
    """-v_p(x), so |x| = p**logabs(x); -inf iff x = 0."""
    return x.logabs()
