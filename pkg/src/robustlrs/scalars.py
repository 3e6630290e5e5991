"""Exact scalar tower: rationals, quadratic surds, and rational intervals.

Rationals are plain ``fractions.Fraction``.  ``QuadraticSurd`` represents
``p + q*sqrt(d)`` with rational p, q and a non-square natural d; it is the
fast exact path for every low-order computation where characteristic roots
live in a single real quadratic extension.  Anything beyond that tower is
promoted to :class:`robustlrs.algebraic.AlgebraicReal`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

Rat = Fraction

#: scalars accepted by most arithmetic entry points
Scalar = Union[int, Fraction, "QuadraticSurd"]


class IncompatibleSurdError(ArithmeticError):
    """Arithmetic mixed two irrational surds over different radicands."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition."""


class UnsupportedProblemError(Exception):
    """The instance falls outside the supported decision envelope.

    Deciders catch this and return an UNSUPPORTED verdict instead of ever
    guessing.
    """


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s^2 * d and d squarefree.

    Trial division up to a fixed bound; larger radicands are returned raw
    with s = 1 (still a correct representation, just not canonical).
    """
    if n < 0:
        raise InvalidInputError("radicand must be nonnegative")
    if n == 0:
        return 0, 0
    s, d, m = 1, 1, n
    p = 2
    while p * p <= m and p < 1_000:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if _is_square(m):
        s *= math.isqrt(m)
    else:
        d *= m
    return s, d


def isqrt_floor(fr: Fraction) -> int:
    """floor(sqrt(fr)) for a nonnegative rational."""
    if fr < 0:
        raise InvalidInputError("negative radicand")
    # floor(sqrt(a/b)) = isqrt(a*b) // b
    return math.isqrt(fr.numerator * fr.denominator) // fr.denominator


def sqrt_bounds(fr: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sqrt(fr) with gap at most `width`."""
    if fr < 0:
        raise InvalidInputError("negative radicand")
    if fr == 0:
        return Fraction(0), Fraction(0)
    # one-shot scale: 2/scale <= width
    scale = 2 * (width.denominator // width.numerator + 1)
    n = fr * scale * scale
    lo = math.isqrt(n.numerator // n.denominator)
    lo_f = Fraction(lo, scale)
    hi_f = Fraction(lo + 1, scale)
    if hi_f * hi_f <= fr:  # flooring slack
        lo_f = hi_f
        hi_f = Fraction(lo + 2, scale)
    return lo_f, hi_f


class QuadraticSurd:
    """Exact value p + q*sqrt(d), d a non-square natural number.

    Values with q == 0 are rationals and carry d == 0.  Arithmetic between
    surds requires a common radicand; mixing distinct irrational radicands
    raises :class:`IncompatibleSurdError` so callers can promote to the
    general algebraic representation.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q=0, d: int = 0):
        p = Fraction(p)
        q = Fraction(q)
        d = int(d)
        if q != 0 and d < 0:
            raise InvalidInputError("negative radicand")
        if q != 0 and d > 0:
            s, dd = squarefree_split(d)
            if dd == 1:  # perfect square: collapse to a rational
                p, q, d = p + q * s, Fraction(0), 0
            else:
                q, d = q * s, dd
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        self.p, self.q, self.d = p, q, d

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def of(x: Scalar) -> "QuadraticSurd":
        if isinstance(x, QuadraticSurd):
            return x
        return QuadraticSurd(Fraction(x))

    @staticmethod
    def sqrt_rational(fr) -> "QuadraticSurd":
        """Exact sqrt of a nonnegative rational, as a surd."""
        fr = Fraction(fr)
        if fr < 0:
            raise InvalidInputError("negative radicand")
        if fr == 0:
            return QuadraticSurd(0)
        n = fr.numerator * fr.denominator
        s, d = squarefree_split(n)
        return QuadraticSurd(0, Fraction(s, fr.denominator), d)

    # -- predicates -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise InvalidInputError("value is irrational")
        return self.p

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.q, self.d)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.q != 0 and self.q != 0 and other.d != self.d:
                raise IncompatibleSurdError(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return NotImplemented  # type: ignore[return-value]

    def _common_d(self, other: "QuadraticSurd") -> int:
        return self.d if self.q != 0 else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticSurd(self.p + o.p, self.q + o.q, self._common_d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._common_d(o)
        return QuadraticSurd(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticSurd":
        if self.is_rational:
            if self.p == 0:
                raise ZeroDivisionError("surd division by zero")
            return QuadraticSurd(1 / self.p)
        nrm = self.p * self.p - self.q * self.q * self.d
        if nrm == 0:
            raise ZeroDivisionError("surd division by zero")
        return QuadraticSurd(self.p / nrm, -self.q / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__mul__(o.inverse())

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticSurd(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        p, q, d = self.p, self.q, self.d
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        # sign of p + q*sqrt(d): compare p^2 with q^2 d
        lhs, rhs = p * p, q * q * d
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        if p > 0:  # q < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        return (self - o).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (IncompatibleSurdError, TypeError):
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    # -- numeric views ---------------------------------------------------------

    def enclosure(self, width=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        """Rational interval containing the exact value."""
        if self.q == 0:
            return self.p, self.p
        lo, hi = sqrt_bounds(Fraction(self.d), Fraction(width) / (2 * abs(self.q)))
        if self.q > 0:
            return self.p + self.q * lo, self.p + self.q * hi
        return self.p + self.q * hi, self.p + self.q * lo

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def try_sqrt(self):
        """Exact square root within the same tower, or None.

        Rational inputs always succeed (possibly introducing a radicand);
        irrational inputs succeed only when the value is a perfect square
        of the field Q(sqrt(d)).
        """
        sg = self.sign()
        if sg < 0:
            raise InvalidInputError("negative radicand")
        if sg == 0:
            return QuadraticSurd(0)
        if self.is_rational:
            return QuadraticSurd.sqrt_rational(self.p)
        # (a + b*sqrt(d))^2 = self: a^2 + b^2 d = p, 2ab = q
        # a^2 is a root of z^2 - p z + q^2 d / 4
        disc = self.p * self.p - self.q * self.q * self.d
        root = _rational_sqrt(disc)
        if root is None:
            return None
        for a2 in ((self.p + root) / 2, (self.p - root) / 2):
            a = _rational_sqrt(a2)
            if a is None or a == 0:
                continue
            for aa in (a, -a):
                b = self.q / (2 * aa)
                cand = QuadraticSurd(aa, b, self.d)
                if cand.sign() >= 0 and (cand * cand - self).sign() == 0:
                    return cand
        return None

    def __repr__(self):
        if self.q == 0:
            return f"{self.p}"
        qs = f"{self.q}" if self.q != 1 else ""
        mult = "*" if qs else ""
        return f"{self.p}+{qs}{mult}sqrt({self.d})" if self.q > 0 else f"{self.p}{qs}{mult}sqrt({self.d})"


def _rational_sqrt(fr: Fraction):
    """Exact rational sqrt of fr, or None."""
    if fr < 0:
        return None
    rn, rd = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
    if rn * rn == fr.numerator and rd * rd == fr.denominator:
        return Fraction(rn, rd)
    return None


# -- generic scalar helpers ----------------------------------------------------


def as_exact(x) -> Scalar:
    """Coerce int/str/Fraction/surd into the exact tower."""
    if isinstance(x, (int, Fraction, QuadraticSurd)):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise InvalidInputError(
            f"refusing float {x!r}: pass a rational string like '3/5'"
        )
    raise InvalidInputError(f"not an exact scalar: {x!r}")


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_is_rational(x: Scalar) -> bool:
    return not isinstance(x, QuadraticSurd) or x.is_rational


def scalar_fraction(x: Scalar) -> Fraction:
    if isinstance(x, QuadraticSurd):
        return x.as_fraction()
    return Fraction(x)


def scalar_enclosure(x: Scalar, width=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    if isinstance(x, QuadraticSurd):
        return x.enclosure(width)
    f = Fraction(x)
    return f, f


def scalar_sqrt(x: Scalar):
    """Exact sqrt within the surd tower; None if it would leave the tower."""
    if isinstance(x, QuadraticSurd):
        return x.try_sqrt()
    return QuadraticSurd.sqrt_rational(Fraction(x))


_SURD_RE = re.compile(
    r"^\s*(?P<p>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?P<sign>[+-])?\s*(?:(?P<q>\d+(?:/\d+)?)\s*\*\s*)?"
    r"sqrt\(\s*(?P<d>\d+)\s*\)\s*(?:/\s*(?P<den>\d+)\s*)?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse scalar literals: 'p/q', 'p+q*sqrt(d)', 'sqrt(d)/k', '-sqrt(2)'."""
    s = text.strip()
    if "sqrt" not in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad scalar literal {text!r}: {exc}") from None
    m = _SURD_RE.match(s)
    if not m:
        raise InvalidInputError(f"bad scalar literal {text!r}")
    p = Fraction(m.group("p")) if m.group("p") else Fraction(0)
    q = Fraction(m.group("q")) if m.group("q") else Fraction(1)
    if m.group("sign") == "-":
        q = -q
    elif m.group("sign") is None and m.group("p") is not None:
        raise InvalidInputError(f"bad scalar literal {text!r}: missing sign")
    if m.group("den"):
        q /= int(m.group("den"))
    d = int(m.group("d"))
    return QuadraticSurd(p, q, d)


def format_scalar(x: Scalar) -> str:
    """Inverse of parse_scalar, used for JSON serialization."""
    if isinstance(x, QuadraticSurd):
        if x.is_rational:
            return str(x.p)
        sign = "+" if x.q > 0 else "-"
        return f"{x.p}{sign}{abs(x.q)}*sqrt({x.d})"
    return str(Fraction(x))


# -- rational interval arithmetic ------------------------------------------------


class RatInterval:
    """Closed interval with rational endpoints; conservative arithmetic."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = Fraction(lo)
        self.hi = Fraction(hi if hi is not None else lo)
        if self.lo > self.hi:
            raise InvalidInputError("interval endpoints out of order")

    def __add__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self):
        """Definite sign, or None when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"
