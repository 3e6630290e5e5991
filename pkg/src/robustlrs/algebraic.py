"""Real algebraic numbers as (defining polynomial, isolating interval).

The defining polynomial is primitive, squarefree, with positive leading
coefficient; the interval contains exactly one of its real roots and its
endpoints are not roots (rational values use a degenerate [r, r] interval
and a linear polynomial).  Comparison, sign, arithmetic, square roots and
root-of-unity detection are all exact.

Interval refinement only ever shrinks toward the same root, so values are
observationally immutable and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from . import intpoly as ip
from .scalars import InvalidInputError, QuadraticSurd, RatInterval

ScalarLike = Union[int, Fraction, QuadraticSurd, "AlgebraicReal"]


class AlgebraicReal:
    __slots__ = ("poly", "lo", "hi", "_chain")

    def __init__(self, poly: Sequence[int], lo: Fraction, hi: Fraction):
        poly = ip.primitive(poly)
        if ip.degree(poly) < 1:
            raise InvalidInputError("defining polynomial must be nonconstant")
        lo, hi = Fraction(lo), Fraction(hi)
        poly = ip.squarefree_part(poly)
        poly = _reduce_defining(poly, lo, hi)
        if ip.degree(poly) == 1:
            r = Fraction(-poly[0], poly[1])
            lo = hi = r
        else:
            if ip.eval_at(poly, lo) == 0 or ip.eval_at(poly, hi) == 0:
                raise InvalidInputError("interval endpoints must not be roots")
            n = ip.sturm_count(ip.sturm_chain(poly), lo, hi)
            if n != 1:
                raise InvalidInputError(f"interval isolates {n} roots, not 1")
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self._chain: Optional[list] = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_rational(r) -> "AlgebraicReal":
        r = Fraction(r)
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly = ip.primitive((-r.numerator, r.denominator))
        out.lo = out.hi = r
        out._chain = None
        return out

    @staticmethod
    def from_surd(s: QuadraticSurd) -> "AlgebraicReal":
        if s.is_rational:
            return AlgebraicReal.from_rational(s.p)
        # minimal polynomial of p + q sqrt(d): x^2 - 2p x + (p^2 - q^2 d)
        two_p = 2 * s.p
        nrm = s.p * s.p - s.q * s.q * s.d
        poly = ip.from_fractions([nrm, -two_p, Fraction(1)])
        # enclosure must exclude the conjugate, which is 2|q|sqrt(d) away
        gap = abs(s.q) * Fraction(1)  # sqrt(d) >= 1
        lo, hi = s.enclosure(gap)
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly = ip.primitive(poly)
        out.lo, out.hi = lo, hi
        out._chain = None
        if ip.eval_at(out.poly, lo) == 0 or ip.eval_at(out.poly, hi) == 0:
            lo2, hi2 = s.enclosure(gap / 1024)
            out.lo, out.hi = lo2, hi2
        return out

    @staticmethod
    def of(x: ScalarLike) -> "AlgebraicReal":
        if isinstance(x, AlgebraicReal):
            return x
        if isinstance(x, QuadraticSurd):
            return AlgebraicReal.from_surd(x)
        return AlgebraicReal.from_rational(x)

    # -- basics ----------------------------------------------------------------

    @property
    def min_poly(self) -> tuple[int, ...]:
        return self.poly

    @property
    def isolating_interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise InvalidInputError("value is irrational")
        return self.lo

    def try_surd(self) -> Optional[QuadraticSurd]:
        """Express as a quadratic surd when the defining degree allows."""
        if self.is_rational:
            return QuadraticSurd(self.lo)
        if ip.degree(self.poly) != 2:
            return None
        c0, c1, c2 = self.poly
        disc = c1 * c1 - 4 * c2 * c0  # > 0: the value is a real root
        p = Fraction(-c1, 2 * c2)
        qmag = Fraction(1, abs(2 * c2))
        for sgn in (1, -1):
            cand = QuadraticSurd(p, sgn * qmag, disc)
            if _surd_matches(self, cand):
                return cand
        return None

    def _sturm(self):
        if self._chain is None:
            self._chain = ip.sturm_chain(self.poly)
        return self._chain

    # -- refinement -------------------------------------------------------------

    def refine_to(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Shrink the cached interval to at most `width`; returns it."""
        width = Fraction(width)
        if width <= 0:
            raise InvalidInputError("width must be positive")
        if self.is_rational:
            return (self.lo, self.hi)
        slo = ip.sign_at(self.poly, self.lo)
        shi = ip.sign_at(self.poly, self.hi)
        lo, hi = self.lo, self.hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = ip.sign_at(self.poly, mid)
            if sm == 0:
                # rational root found exactly (possible only pre-reduction)
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        self.lo, self.hi = lo, hi
        return (lo, hi)

    def enclosure(self, width=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        return self.refine_to(width)

    def interval(self) -> RatInterval:
        return RatInterval(self.lo, self.hi)

    # -- sign and order -----------------------------------------------------------

    def sign(self) -> int:
        if self.is_rational:
            v = self.lo
            return (v > 0) - (v < 0)
        while self.lo < 0 < self.hi:
            if self.is_root_of((0, 1)):  # poly x: value 0
                return 0
            self.refine_to((self.hi - self.lo) / 8)
        if self.lo >= 0:
            return 1 if self.hi > 0 or self.lo > 0 else 0
        return -1

    def is_root_of(self, q: Sequence[int]) -> bool:
        """Exact membership: is this value a root of integer polynomial q?"""
        q = ip.normalize(q)
        if not q:
            return True
        if self.is_rational:
            return ip.eval_at(q, self.lo) == 0
        g = ip.gcd(self.poly, q)
        if ip.degree(g) < 1:
            return False
        h = ip.div_exact(self.poly, g)
        gch = ip.sturm_chain(g)
        hch = ip.sturm_chain(h) if ip.degree(h) >= 1 else None
        while True:
            ng = ip.sturm_count(gch, self.lo, self.hi)
            nh = ip.sturm_count(hch, self.lo, self.hi) if hch else 0
            if ng + nh == 1:
                return ng == 1
            self.refine_to((self.hi - self.lo) / 8)

    def sign_of_poly(self, q: Sequence[int]) -> int:
        """Exact sign of q(alpha) for an integer polynomial q."""
        q = ip.normalize(q)
        if not q:
            return 0
        if self.is_rational:
            return ip.sign_at(q, self.lo)
        if self.is_root_of(q):
            return 0
        while True:
            val = _interval_eval(q, self.lo, self.hi)
            s = val.sign()
            if s is not None:
                return s
            self.refine_to((self.hi - self.lo) / 8)

    def compare(self, other: ScalarLike) -> int:
        o = AlgebraicReal.of(other)
        if self.is_rational and o.is_rational:
            a, b = self.lo, o.lo
            return (a > b) - (a < b)
        # refine until the intervals separate; fall back to equality analysis
        for _ in range(6):
            if self.hi < o.lo:
                return -1
            if o.hi < self.lo:
                return 1
            self.refine_to(_shrink(self))
            o.refine_to(_shrink(o))
        # possible equality: both must be roots of the gcd
        g = ip.gcd(self.poly, o.poly)
        if ip.degree(g) >= 1 and self.is_root_of(g) and o.is_root_of(g):
            iso = ip.isolate_squarefree(g)
            mine = _match_root(self, iso, g)
            theirs = _match_root(o, iso, g)
            if mine == theirs:
                return 0
        while True:
            if self.hi < o.lo:
                return -1
            if o.hi < self.lo:
                return 1
            self.refine_to(_shrink(self))
            o.refine_to(_shrink(o))

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd, AlgebraicReal)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    __hash__ = None  # mutable cache; use exact compare instead

    # -- arithmetic ---------------------------------------------------------------

    def __neg__(self) -> "AlgebraicReal":
        poly = ip.primitive([(-1) ** i * c for i, c in enumerate(self.poly)])
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly, out.lo, out.hi, out._chain = poly, -self.hi, -self.lo, None
        return out

    def add_rational(self, r) -> "AlgebraicReal":
        r = Fraction(r)
        if self.is_rational:
            return AlgebraicReal.from_rational(self.lo + r)
        poly = ip.shift_roots_rational(self.poly, r)
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly, out.lo, out.hi, out._chain = poly, self.lo + r, self.hi + r, None
        return out

    def mul_rational(self, r) -> "AlgebraicReal":
        r = Fraction(r)
        if r == 0 or self.is_rational:
            return AlgebraicReal.from_rational(self.lo * r)
        poly = ip.scale_roots(self.poly, r.numerator, r.denominator)
        a, b = self.lo * r, self.hi * r
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly, out.lo, out.hi, out._chain = poly, min(a, b), max(a, b), None
        return out

    def inverse(self) -> "AlgebraicReal":
        s = self.sign()
        if s == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return AlgebraicReal.from_rational(1 / self.lo)
        while self.lo == 0 or self.hi == 0 or (self.lo < 0 < self.hi):
            self.refine_to(_shrink(self))
        poly = ip.reverse(self.poly)
        a, b = 1 / self.hi, 1 / self.lo
        out = AlgebraicReal.__new__(AlgebraicReal)
        out.poly = ip.primitive(poly)
        out.lo, out.hi, out._chain = min(a, b), max(a, b), None
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.add_rational(other)
        if isinstance(other, QuadraticSurd):
            other = AlgebraicReal.from_surd(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if other.is_rational:
            return self.add_rational(other.lo)
        if self.is_rational:
            return other.add_rational(self.lo)
        res = ip.squarefree_part(ip.resultant_poly_sum(self.poly, other.poly))
        return _isolate_combination(res, self, other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, AlgebraicReal) else AlgebraicReal.of(other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.mul_rational(other)
        if isinstance(other, QuadraticSurd):
            other = AlgebraicReal.from_surd(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if other.is_rational:
            return self.mul_rational(other.lo)
        if self.is_rational:
            return other.mul_rational(self.lo)
        q = _strip_zero_roots(other.poly)
        res = ip.squarefree_part(ip.resultant_poly_prod(self.poly, q))
        return _isolate_combination(res, self, other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if isinstance(other, AlgebraicReal) else AlgebraicReal.of(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sqrt(self) -> "AlgebraicReal":
        s = self.sign()
        if s < 0:
            raise InvalidInputError("negative radicand")
        if s == 0:
            return AlgebraicReal.from_rational(0)
        if self.is_rational:
            surd = QuadraticSurd.sqrt_rational(self.lo)
            return AlgebraicReal.from_surd(surd)
        poly = ip.squarefree_part(ip.compose_square(self.poly))

        def enclose(width):
            from .scalars import sqrt_bounds

            self.refine_to(width * width / 4 if width < 1 else width / 4)
            lo = max(self.lo, Fraction(0))
            a, _ = sqrt_bounds(lo, width / 2)
            _, b = sqrt_bounds(self.hi, width / 2)
            return a, b

        return _isolate_by_enclosure(poly, enclose)

    def pow(self, k: int) -> "AlgebraicReal":
        if k == 0:
            return AlgebraicReal.from_rational(1)
        if k < 0:
            return self.inverse().pow(-k)
        out = AlgebraicReal.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- integer parts ---------------------------------------------------------------

    def floor(self) -> int:
        if self.is_rational:
            return self.lo.numerator // self.lo.denominator
        while True:
            flo = self.lo.numerator // self.lo.denominator
            fhi = self.hi.numerator // self.hi.denominator
            if flo == fhi:
                return flo
            if fhi - flo == 1 and self.is_root_of((-fhi, 1)):
                return fhi  # the value is exactly the integer fhi
            self.refine_to((self.hi - self.lo) / 8)

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 10**17))
        return float((lo + hi) / 2)

    def __repr__(self):
        lo, hi = self.lo, self.hi
        return f"AlgebraicReal(poly={list(self.poly)}, in [{lo}, {hi}] ~ {float(self):.6g})"


def _shrink(a: AlgebraicReal) -> Fraction:
    w = a.hi - a.lo
    return w / 8 if w > 0 else Fraction(1, 10**9)


def _surd_matches(a: AlgebraicReal, cand: QuadraticSurd) -> bool:
    """Exact test: does the algebraic value equal the surd candidate?

    Both are roots of the same quadratic, so interval separation decides.
    """
    width = (a.hi - a.lo) / 2 if a.hi > a.lo else Fraction(1, 2**20)
    for _ in range(200):
        clo, chi = cand.enclosure(width)
        if clo > a.hi or chi < a.lo:
            return False
        if a.lo <= clo and chi <= a.hi and (a.hi - a.lo) < _root_gap(a.poly):
            return True
        a.refine_to(width)
        width /= 16
    raise InvalidInputError("surd match did not resolve")


def _root_gap(poly) -> Fraction:
    """Crude positive lower bound on the distance between the two roots of
    a squarefree quadratic."""
    c0, c1, c2 = poly
    disc = c1 * c1 - 4 * c2 * c0
    # gap = sqrt(disc)/|c2| >= 1/(|c2| * (isqrt(disc)+1)) * disc ... use a
    # simple certified bound: sqrt(disc) > disc / (isqrt(disc) + 1)
    import math as _m

    r = _m.isqrt(disc)
    return Fraction(disc, (r + 1) * abs(c2))


def _match_root(a: AlgebraicReal, intervals, g) -> int:
    """Index of the root of g that equals a (a must be a root of g)."""
    while True:
        for i, (lo, hi) in enumerate(intervals):
            if lo == hi:
                if a.is_root_of(ip.primitive((-lo.numerator, lo.denominator))):
                    return i
            elif lo < a.lo and a.hi < hi:
                return i
        a.refine_to(_shrink(a))


def _interval_eval(q, lo: Fraction, hi: Fraction) -> RatInterval:
    acc = RatInterval(0)
    x = RatInterval(lo, hi)
    for c in reversed(q):
        acc = acc * x + c
    return acc


def _strip_zero_roots(poly):
    k = 0
    while poly[k] == 0:
        k += 1
    return poly[k:] if k else poly


def _reduce_defining(poly, lo, hi):
    """Replace a reducible defining polynomial by the factor owning the root
    in [lo, hi]; complete for degree <= 5, best-effort above."""
    if ip.degree(poly) <= 1:
        return poly
    if ip.degree(poly) > 16 or max(abs(c) for c in poly) > 10**60:
        return poly  # factor search not worth it; poly is already squarefree
    factors = ip.factor_rational(poly)
    if len(factors) == 1:
        return factors[0][0]
    cands = [f for f, _ in factors if ip.degree(f) >= 1]
    if lo == hi:
        for f in cands:
            if ip.eval_at(f, lo) == 0:
                return f
        raise InvalidInputError("interval does not contain a root")
    live = []
    for f in cands:
        if ip.sturm_count(ip.sturm_chain(f), lo, hi) > 0:
            live.append(f)
    if len(live) == 1:
        return live[0]
    # several factors have roots inside: caller's isolation must disambiguate
    return ip.squarefree_part(poly)


def _isolate_combination(res, a: AlgebraicReal, b: AlgebraicReal, op):
    """Isolate op(a, b) as a root of `res` by interval refinement."""

    def enclose(width):
        a.refine_to(width / 4)
        b.refine_to(width / 4)
        ia = RatInterval(a.lo, a.hi)
        ib = RatInterval(b.lo, b.hi)
        iv = op(ia, ib)
        return iv.lo, iv.hi

    return _isolate_by_enclosure(res, enclose)


def _isolate_by_enclosure(poly, enclose) -> AlgebraicReal:
    """Isolate the unique root of `poly` pinned down by a shrinking
    enclosure callback. The target value is guaranteed to be a root."""
    poly = ip.squarefree_part(ip.primitive(poly))
    rational = {Fraction(-f[0], f[1]) for f, _ in ip.factor_rational(poly) if ip.degree(f) == 1}
    chain = ip.sturm_chain(poly)
    width = Fraction(1, 16)
    while True:
        lo, hi = enclose(width)
        lo, hi = Fraction(lo), Fraction(hi)
        # nudge endpoints off roots (expanding keeps the value inside)
        pad = (hi - lo) / 1024 + width / 1024
        while ip.eval_at(poly, lo) == 0:
            lo -= pad
        while ip.eval_at(poly, hi) == 0:
            hi += pad
        n = ip.sturm_count(chain, lo, hi)
        if n == 1:
            for r in rational:
                if lo < r < hi:
                    return AlgebraicReal.from_rational(r)
            return AlgebraicReal(poly, lo, hi)
        width /= 64


# -- module-level operations -------------------------------------------------------


def compare(a: ScalarLike, b: ScalarLike) -> int:
    """Exact three-way comparison: -1, 0, or 1."""
    return AlgebraicReal.of(a).compare(b)


def refine(a: AlgebraicReal, width) -> tuple[Fraction, Fraction]:
    """Sub-interval of the isolating interval with length <= width."""
    return a.refine_to(Fraction(width))


def chebyshev_t(k: int) -> tuple[int, ...]:
    """Integer Chebyshev polynomial with T_k(cos t) = cos(k t)."""
    a, b = (1,), (0, 1)
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, ip.add(ip.mul((0, 2), b), ip.neg(a))
    return b


def chebyshev_u(k: int) -> tuple[int, ...]:
    """Integer polynomial with U_k(cos t) * sin t = sin((k+1) t)."""
    a, b = (1,), (0, 2)
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, ip.add(ip.mul((0, 2), b), ip.neg(a))
    return b


def is_root_of_unity(re: ScalarLike, im: ScalarLike) -> Optional[int]:
    """Smallest k with (re + i*im)^k = 1, if one exists; None otherwise.

    Requires re^2 + im^2 = 1 exactly.  A k-th root of unity of algebraic
    degree d satisfies k <= 2 d^2, so the search is finite.
    """
    re_a = AlgebraicReal.of(re)
    im_a = AlgebraicReal.of(im)
    _require_on_circle(re, im, re_a, im_a)
    if im_a.sign() == 0:
        s = re_a.compare(1)
        if s == 0:
            return 1
        if re_a.compare(-1) == 0:
            return 2
        raise InvalidInputError("point not on the unit circle")
    # degree of re + i*im is at most twice the degree of re
    d = 2 * max(ip.degree(re_a.poly), 1)
    bound = 2 * d * d
    # cos(k t) = 1  <=>  (re + i im)^k = 1 on the circle
    for k in range(1, bound + 1):
        tk = ip.add(chebyshev_t(k), (-1,))
        if re_a.is_root_of(tk):
            return k
    return None


def _require_on_circle(re, im, re_a: AlgebraicReal, im_a: AlgebraicReal):
    # fast exact path for surds/rationals, else algebraic arithmetic
    from .scalars import IncompatibleSurdError

    if isinstance(re, (int, Fraction, QuadraticSurd)) and isinstance(
        im, (int, Fraction, QuadraticSurd)
    ):
        try:
            s = QuadraticSurd.of(re) * QuadraticSurd.of(re) + QuadraticSurd.of(
                im
            ) * QuadraticSurd.of(im)
        except IncompatibleSurdError:
            pass
        else:
            if s != 1:
                raise InvalidInputError("re^2 + im^2 != 1")
            return
    val = re_a * re_a + im_a * im_a
    if val.compare(1) != 0:
        raise InvalidInputError("re^2 + im^2 != 1")


def algebraic_poly_value(alpha: AlgebraicReal, num, den=(1,)) -> AlgebraicReal:
    """Exact value num(alpha)/den(alpha) with a defining polynomial of degree
    at most deg(alpha.poly), built from one interpolated resultant."""
    num = ip.normalize(tuple(num))
    den = ip.normalize(tuple(den))
    if not num:
        return AlgebraicReal.from_rational(0)
    if alpha.is_rational:
        r = alpha.lo
        dv = ip.eval_at(den, r)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes")
        return AlgebraicReal.from_rational(ip.eval_at(num, r) / dv)
    f = alpha.poly
    df = ip.degree(f)
    m = max(ip.degree(num), ip.degree(den))
    pts = []
    x0 = -(df // 2) - 1
    for _ in range(df + 1):
        x0 += 1
        g = ip.add(ip.mul((x0,), den), ip.neg(num))
        g_padded = list(g) + [0] * (m + 1 - len(g))
        pts.append((x0, _formal_resultant(f, tuple(g_padded), m)))
    res = ip.normalize(ip.lagrange_interpolate(pts))
    if ip.degree(res) < 1:
        raise InvalidInputError("degenerate resultant in value construction")

    def enclose(width):
        alpha.refine_to(width / 4)
        nv = _interval_eval(num, alpha.lo, alpha.hi)
        dv = _interval_eval(den, alpha.lo, alpha.hi)
        while dv.contains_zero():
            alpha.refine_to((alpha.hi - alpha.lo) / 8)
            dv = _interval_eval(den, alpha.lo, alpha.hi)
            nv = _interval_eval(num, alpha.lo, alpha.hi)
        cands = (nv.lo / dv.lo, nv.lo / dv.hi, nv.hi / dv.lo, nv.hi / dv.hi)
        return min(cands), max(cands)

    return _isolate_by_enclosure(res, enclose)


def _formal_resultant(f, g, formal_deg_g: int) -> int:
    """Sylvester determinant treating g as having formal degree formal_deg_g."""
    da = ip.degree(f)
    n = da + formal_deg_g
    ra = list(reversed(f))
    rg = list(reversed(list(g[: formal_deg_g + 1])))
    rows = []
    for i in range(formal_deg_g):
        rows.append([0] * i + ra + [0] * (n - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + rg + [0] * (n - formal_deg_g - 1 - i))
    return ip._bareiss_det(rows)


# -- full root isolation with conjugate pairs ------------------------------------


class RootData:
    """Roots of an integer polynomial: real ones ascending with
    multiplicity, complex ones as (re, im > 0, multiplicity) pairs."""

    def __init__(self, real, complex_pairs):
        self.real: list[tuple[AlgebraicReal, int]] = real
        self.complex_pairs: list[tuple[AlgebraicReal, AlgebraicReal, int]] = complex_pairs

    def __repr__(self):
        return f"RootData(real={self.real}, complex_pairs={self.complex_pairs})"


def isolate_real_roots(poly: Sequence[int]) -> RootData:
    """Isolate every root of `poly` exactly.

    Real roots come back ascending with multiplicity; each complex
    conjugate pair is reported once via exact real and imaginary parts.
    """
    poly = ip.normalize(poly)
    if not poly:
        raise InvalidInputError("zero polynomial")
    if ip.degree(poly) == 0:
        return RootData([], [])
    real: list[tuple[AlgebraicReal, int]] = []
    cpx: list[tuple[AlgebraicReal, AlgebraicReal, int]] = []
    for factor, mult in ip.factor_rational(poly):
        d = ip.degree(factor)
        if d < 1:
            continue
        froots = [
            AlgebraicReal(factor, lo, hi) if lo != hi else AlgebraicReal.from_rational(lo)
            for lo, hi in ip.isolate_squarefree(factor)
        ]
        for r in froots:
            real.append((r, mult))
        n_pairs = (d - len(froots)) // 2
        if n_pairs:
            for re_part, im_part in _complex_pairs(factor, froots, n_pairs):
                cpx.append((re_part, im_part, mult))
    import functools

    real.sort(key=functools.cmp_to_key(lambda x, y: x[0].compare(y[0])))
    return RootData(real, cpx)


def _complex_pairs(factor, real_roots, n_pairs):
    d = ip.degree(factor)
    if d == 2:
        c0, c1, c2 = factor
        re = AlgebraicReal.from_rational(Fraction(-c1, 2 * c2))
        m = Fraction(c0, c2)
        im_sq = m - Fraction(c1 * c1, 4 * c2 * c2)
        im = AlgebraicReal.from_surd(QuadraticSurd.sqrt_rational(im_sq))
        return [(re, im)]
    if d == 3 and n_pairs == 1:
        r = real_roots[0]
        c0, _, c2, c3 = factor
        trace = Fraction(-c2, c3)
        re = r.mul_rational(Fraction(-1, 2)).add_rational(trace / 2)
        # im^2 = (-c0/(c3 r)) - ((trace - r)/2)^2, one rational function of r
        # cleared to integer polynomials: num/den with den = 4 c3^3 r
        num = ip.add(
            (-4 * c0 * c3 * c3,),
            ip.neg(ip.mul((0, c3), ip.mul((c2, c3), (c2, c3)))),
        )
        den = (0, 4 * c3**3)
        im_sq = algebraic_poly_value(r, num, den)
        im = im_sq.sqrt()
        return [(re, im)]
    if d == 4:
        return _complex_pairs_quartic(factor, n_pairs)
    return _complex_pairs_generic(factor, real_roots, n_pairs)


def _complex_pairs_quartic(factor, n_pairs):
    """Exact conjugate pairs of an irreducible quartic.

    Writing the quartic as c4 (x^2 - 2 a1 x + m1)(x^2 - 2 a2 x + m2) over R
    (real quadratics for pairs, or one of them the product of the two real
    roots), comparing coefficients makes each m a rational function of its
    real part a.  Candidates for a come from the pair-sum resultant and are
    verified by substituting a + i sqrt(m - a^2) back into the quartic.
    """
    c0, c1, c2, c3, c4 = (Fraction(c) for c in factor)
    t = -c3 / c4  # sum of all four roots
    pair_sum = ip.squarefree_part(ip.resultant_pair_sums(factor))
    cands = [
        AlgebraicReal(pair_sum, lo, hi) if lo != hi else AlgebraicReal.from_rational(lo)
        for lo, hi in ip.isolate_squarefree(pair_sum)
    ]
    if n_pairs == 2:
        # m(a) = (4a^3 - 2t a^2 + (c2/c4) a + c1/(2 c4)) / (2a - t/2)
        th = t / 2
        m_num, m_den = _frac_ratio_clear(
            [c1 / (2 * c4), c2 / c4, -4 * th, Fraction(4)], [-th, Fraction(2)]
        )
    else:
        # one pair plus two real roots:
        # m(a) = (8a^3 - 4t a^2 + (2 c2/c4) a + c1/c4) / (4a - t)
        m_num, m_den = _frac_ratio_clear(
            [c1 / c4, 2 * c2 / c4, -4 * t, Fraction(8)], [-t, Fraction(4)]
        )
    # b^2 = m(a) - a^2 as one rational function keeps degrees flat
    im_sq_num = ip.add(m_num, ip.neg(ip.mul(m_den, (0, 0, 1))))
    out = []
    for a in cands:
        if a.sign_of_poly(m_den) == 0:
            out.extend(_quartic_equal_parts(factor, a))
            continue
        if not _quartic_pair_verifies(factor, a, m_num, m_den):
            continue
        im_sq = algebraic_poly_value(a, im_sq_num, m_den)
        if im_sq.sign() <= 0:
            continue
        out.append((a, im_sq.sqrt()))
        if len(out) == n_pairs:
            break
    if len(out) != n_pairs:
        raise InvalidInputError("quartic pair extraction failed")
    return out


def _frac_ratio_clear(num_fs, den_fs):
    """Clear a rational-function num/den to integer polynomials with one
    common multiplier, preserving the ratio."""
    import math as _m

    den_lcm = 1
    for f in list(num_fs) + list(den_fs):
        f = Fraction(f)
        den_lcm = den_lcm * f.denominator // _m.gcd(den_lcm, f.denominator)
    num = ip.normalize(int(Fraction(f) * den_lcm) for f in num_fs)
    den = ip.normalize(int(Fraction(f) * den_lcm) for f in den_fs)
    return num, den


def _quartic_pair_verifies(factor, a: AlgebraicReal, m_num, m_den) -> bool:
    """Does x^2 - 2 a x + m(a) divide the quartic, with m = m_num/m_den?

    The remainder of c4 x^4 + ... + c0 modulo x^2 - 2A x + M is
        r1(A, M) x + r0(A, M),
        r1 = c1 + 2 c2 A + 4 c3 A^2 + 8 c4 A^3 - (c3 + 4 c4 A) M
        r0 = c0 - (c2 + 2 c3 A + 4 c4 A^2) M + c4 M^2;
    substituting M = m_num/m_den and clearing denominators leaves two
    integer polynomials that must vanish at a.
    """
    c0, c1, c2, c3, c4 = factor
    r1_a = ip.mul((c1, 2 * c2, 4 * c3, 8 * c4), m_den)
    r1_b = ip.mul((c3, 4 * c4), m_num)
    R1 = ip.add(r1_a, ip.neg(r1_b))
    r0_a = ip.mul((c0,), ip.mul(m_den, m_den))
    r0_b = ip.mul(ip.mul((c2, 2 * c3, 4 * c4), m_num), m_den)
    r0_c = ip.mul((c4,), ip.mul(m_num, m_num))
    R0 = ip.add(ip.add(r0_a, ip.neg(r0_b)), r0_c)
    if ip.normalize(R1) and not a.is_root_of(R1):
        return False
    if ip.normalize(R0) and not a.is_root_of(R0):
        return False
    return True


def _quartic_equal_parts(factor, a: AlgebraicReal):
    """Quadratic-divisor extraction when the rational-function formula for
    m degenerates: the quartic is c4 (x^2-2ax+m)(x^2-2ax+q) with m, q the
    roots of z^2 - S z + P.  Covers both the two-equal-real-part-pairs case
    and the one-pair-with-mirrored-real-roots case."""
    c0, c1, c2, c3, c4 = (Fraction(c) for c in factor)
    if not a.is_rational:
        raise InvalidInputError("equal-part quartic with irrational part")
    av = a.as_fraction()
    S = c2 / c4 - 4 * av * av
    P = c0 / c4
    if -2 * av * S != c1 / c4:  # x^1 coefficient must match
        return []
    out = []
    for m in _quadratic_roots_exact(S, P):
        diff = m - QuadraticSurd(av * av)
        if diff.sign() > 0:
            root = diff.try_sqrt()
            im = (
                AlgebraicReal.from_surd(root)
                if root is not None
                else AlgebraicReal.of(diff).sqrt()
            )
            out.append((AlgebraicReal.from_rational(av), im))
    return out


def _quadratic_roots_exact(S: Fraction, P: Fraction):
    """Real roots of z^2 - S z + P as surds (possibly none)."""
    disc = S * S - 4 * P
    if disc < 0:
        return []
    half = QuadraticSurd(S / 2)
    root = QuadraticSurd.sqrt_rational(disc) * Fraction(1, 2)
    return [half + root, half - root]


def _complex_pairs_generic(factor, real_roots, n_pairs):
    """Quadratic-divisor search for degree >= 5 factors.

    Real parts come from the pair-sum resultant, squared moduli from the
    pair-product resultant.  Numeric root estimates shortlist the candidate
    combinations; exact interval division then rejects impostors until
    exactly the true conjugate pairs survive (the survivor count is the
    rigorous stopping criterion, the numerics only order the work).
    """
    import mpmath

    pair_sum = ip.squarefree_part(ip.resultant_pair_sums(factor))
    re_cands = [
        AlgebraicReal(pair_sum, lo, hi) if lo != hi else AlgebraicReal.from_rational(lo)
        for lo, hi in ip.isolate_squarefree(pair_sum)
    ]
    stripped = _strip_zero_roots(factor)
    prod = ip.squarefree_part(ip.resultant_poly_prod(factor, stripped))
    m_cands = [
        AlgebraicReal(prod, lo, hi) if lo != hi else AlgebraicReal.from_rational(lo)
        for lo, hi in ip.isolate_squarefree(prod)
        if hi > 0
    ]
    m_cands = [m for m in m_cands if m.sign() > 0]
    with mpmath.workdps(50):
        try:
            roots = mpmath.polyroots(
                [mpmath.mpf(c) for c in reversed(factor)], maxsteps=200, extraprec=300
            )
        except mpmath.libmp.NoConvergence:
            roots = []
    ests = [
        (float(z.real), float(abs(z) ** 2)) for z in roots if float(z.imag) > 1e-20
    ]

    def near(cands, target, tol=1e-8):
        picks = []
        for c in cands:
            c.refine_to(Fraction(1, 10**12))
            mid = float((c.lo + c.hi) / 2)
            if abs(mid - target) < tol:
                picks.append(c)
        return picks

    shortlist = []
    for ra, rm in ests:
        for a in near(re_cands, ra):
            for m in near(m_cands, rm):
                if not any(a is a2 and m is m2 for a2, m2 in shortlist):
                    shortlist.append((a, m))
    combos = shortlist if len(shortlist) >= n_pairs else [
        (a, m) for a in re_cands for m in m_cands
    ]
    width = Fraction(1, 64)
    for _ in range(24):
        survivors = []
        for a, m in combos:
            a.refine_to(width)
            m.refine_to(width)
            ia, im_ = RatInterval(a.lo, a.hi), RatInterval(m.lo, m.hi)
            disc = im_ - ia * ia  # need m - a^2 > 0
            if disc.sign() == -1:
                continue
            r1, r0 = _quad_divisor_remainder(factor, ia, im_)
            if not r1.contains_zero() or not r0.contains_zero():
                continue
            survivors.append((a, m))
        combos = survivors
        if len(combos) == n_pairs:
            return [(a, _match_imaginary(factor, a, m)) for a, m in combos]
        if not combos:
            break
        width /= 64
    raise InvalidInputError(
        f"conjugate-pair extraction unsupported for this degree-{ip.degree(factor)} factor"
    )


def _pair_diff_squares(p):
    """Integer polynomial whose roots include (alpha - beta)^2 over root
    pairs of p; built from Res_x(p(x), p(x + z)) with the z = 0 component
    stripped."""
    p = ip.normalize(p)
    d = ip.degree(p)
    target = d * d
    pts = []
    z0 = -(target // 2) - 1
    for _ in range(target + 1):
        z0 += 1
        shifted = ip.shift(p, z0)  # p(x + z0) in x
        pts.append((z0, ip.resultant(p, shifted)))
    D = ip.normalize(ip.lagrange_interpolate(pts))
    D = _strip_zero_roots(D)
    # symmetrize: D(z) D(-z) is a polynomial in z^2
    Dm = tuple((-1) ** i * c for i, c in enumerate(D))
    sym = ip.mul(D, Dm)
    even = ip.normalize(sym[0::2])
    return ip.squarefree_part(even)


def _match_imaginary(factor, a: AlgebraicReal, m: AlgebraicReal) -> AlgebraicReal:
    """Imaginary part of the pair with real part a and |root|^2 = m.

    im^2 = -((gamma - conj)^2)/4 is a root of the pair-difference-square
    polynomial; the right root is the one matching m - a^2, found by
    interval separation.
    """
    dsq = _pair_diff_squares(factor)
    tpoly = ip.squarefree_part(ip.scale_roots(dsq, -1, 4))
    t_cands = [
        AlgebraicReal(tpoly, lo, hi) if lo != hi else AlgebraicReal.from_rational(lo)
        for lo, hi in ip.isolate_squarefree(tpoly)
        if hi > 0
    ]
    t_cands = [t for t in t_cands if t.sign() > 0]
    width = Fraction(1, 64)
    while True:
        target = RatInterval(m.lo, m.hi) - RatInterval(a.lo, a.hi) * RatInterval(
            a.lo, a.hi
        )
        live = [
            t
            for t in t_cands
            if not (t.hi < target.lo or t.lo > target.hi)
        ]
        if len(live) == 1:
            return live[0].sqrt()
        if not live:
            raise InvalidInputError("imaginary-part match failed")
        a.refine_to(width)
        m.refine_to(width)
        for t in live:
            t.refine_to(width)
        t_cands = live
        width /= 64


def _quad_divisor_remainder(poly, a: RatInterval, m: RatInterval):
    """Interval remainder of poly modulo x^2 - 2a x + m: (linear, const)."""
    n = ip.degree(poly)
    coeffs = [RatInterval(c) for c in reversed(poly)]
    two_a = a * 2
    for i in range(n - 1):
        coeffs[i + 1] = coeffs[i + 1] + coeffs[i] * two_a
        coeffs[i + 2] = coeffs[i + 2] - coeffs[i] * m
    return coeffs[n - 1], coeffs[n]
