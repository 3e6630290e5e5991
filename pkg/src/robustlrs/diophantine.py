"""Continued fractions, nearest-distance functionals, Ostrowski numeration,
constructive inhomogeneous-approximation targets, and empirical estimation
of Diophantine approximation types and Lagrange constants.

Quadratic surds get exact eventually-periodic expansions (partial
quotients, integer convergents, exact theta_k = q_k x - p_k); other reals
enter through certified shrinking enclosures with precision escalation,
and every emitted partial quotient is provably correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .scalars import (
    InvalidInputError,
    QuadraticSurd,
    RatInterval,
    UnsupportedProblemError,
    as_exact,
    scalar_enclosure,
    scalar_sign,
)

try:  # GMP-backed integers cut the giant-operand multiplications hard
    from gmpy2 import mpz as _mpz, isqrt as _isqrt
except ImportError:  # pragma: no cover
    _mpz = int
    _isqrt = math.isqrt

Real = Union[int, Fraction, QuadraticSurd]


def _floor_surd(x: QuadraticSurd) -> int:
    """floor(p + q sqrt(d)) by one integer square root plus exact compares."""
    if x.is_rational:
        return x.p.numerator // x.p.denominator
    # floor of t = q sqrt(d):  |t| = sqrt(q^2 d)
    sq = x.q * x.q * x.d
    root_floor = math.isqrt(sq.numerator * sq.denominator) // sq.denominator
    exact = Fraction(root_floor) ** 2 == sq
    if x.q > 0:
        m = root_floor
    else:
        m = -root_floor if exact else -(root_floor + 1)
    base = x.p.numerator // x.p.denominator + m
    # the value lies in [base, base + 2): test the two candidate floors
    for cand in (base + 1, base):
        if (x - (cand + 1)).sign() < 0 and (x - cand).sign() >= 0:
            return cand
    raise AssertionError("floor bracket failed")


def floor_exact(x: Real) -> int:
    if isinstance(x, QuadraticSurd):
        return _floor_surd(x)
    f = Fraction(x)
    return f.numerator // f.denominator


def frac_exact(x: Real):
    return as_exact(x) - floor_exact(x)


def nearest_dist(x: Real):
    """[x]: exact distance from x to the nearest integer (ties give 1/2)."""
    f = frac_exact(x)
    one_minus = 1 - f
    return f if scalar_sign(one_minus - f) >= 0 else one_minus


def nearest_dist_mod(x, b, precision=Fraction(1, 10**9)) -> RatInterval:
    """[x]_b = b [x/b]: exact for tower scalars, a certified enclosure when
    b is given as a shrinking-enclosure callable (e.g. 2*pi)."""
    if isinstance(b, (int, Fraction, QuadraticSurd)):
        val = nearest_dist(as_exact(x) / as_exact(b)) * as_exact(b)
        lo, hi = scalar_enclosure(val, precision)
        return RatInterval(lo, hi)
    width = precision / 4
    while True:
        blo, bhi = (Fraction(v) for v in b(width))
        xv = Fraction(x)
        ratios = sorted((xv / blo, xv / bhi))
        m_lo = math.floor(ratios[0] + Fraction(1, 2))
        m_hi = math.floor(ratios[1] + Fraction(1, 2))
        if m_lo == m_hi:
            vals = sorted((abs(xv - m_lo * blo), abs(xv - m_lo * bhi)))
            out = RatInterval(vals[0], vals[1])
            if out.width <= precision:
                return out
        width /= 64


class PrecisionExhausted(UnsupportedProblemError):
    """A certified expansion ran out of its precision budget."""


class ContinuedFraction:
    """Partial-quotient stream with exact convergents.

    Surd-backed expansions are exact and endless (eventually periodic,
    with the cycle detected); enclosure-backed expansions certify each
    quotient by interval-unambiguous floors under geometric precision
    escalation, up to a digit budget.
    """

    def __init__(self):
        self.quotients: list[int] = []
        self.terminated = False
        self._x0 = None  # exact value when available
        self._tail = None  # current surd tail
        self._seen: dict = {}
        self.cycle_start: Optional[int] = None
        self.cycle: Optional[list[int]] = None
        self._enclosure = None
        self._dps = 60
        self._budget = 4000
        self._convs: list[tuple[int, int]] = []

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def of(x, budget_dps: int = 4000) -> "ContinuedFraction":
        if isinstance(x, str):
            from .scalars import parse_scalar

            x = parse_scalar(x)
        cf = ContinuedFraction()
        cf._budget = budget_dps
        if isinstance(x, (int, Fraction)):
            cf._init_rational(Fraction(x))
        elif isinstance(x, QuadraticSurd):
            if x.is_rational:
                cf._init_rational(x.p)
            else:
                cf._x0 = x
                cf._tail = x
        elif callable(x):
            cf._enclosure = x
        else:
            from .algebraic import AlgebraicReal

            if isinstance(x, AlgebraicReal):
                cf._enclosure = lambda w: x.refine_to(w)
            else:
                raise InvalidInputError(f"cannot expand {x!r}")
        return cf

    def _init_rational(self, fr: Fraction):
        self._x0 = fr
        a0 = fr.numerator // fr.denominator
        self.quotients = [a0]
        rem = fr - a0
        while rem != 0:
            rem = 1 / rem
            a = rem.numerator // rem.denominator
            self.quotients.append(a)
            rem -= a
        if len(self.quotients) > 1 and self.quotients[-1] == 1:
            self.quotients.pop()
            self.quotients[-1] += 1
        self.terminated = True

    # -- expansion ---------------------------------------------------------------

    def extend_to(self, depth: int):
        if self.terminated:
            if depth > len(self.quotients):
                raise InvalidInputError(
                    f"rational expansion terminates at depth {len(self.quotients)}"
                )
            return
        if self._tail is not None or self._x0 is not None:
            self._extend_surd(depth)
        elif self._enclosure is not None:
            self._extend_enclosure(depth)

    def _extend_surd(self, depth: int):
        while len(self.quotients) < depth:
            if self.cycle is not None:
                idx = (len(self.quotients) - self.cycle_start) % len(self.cycle)
                self.quotients.append(self.cycle[idx])
                continue
            x = self._tail
            a = _floor_surd(x)
            self.quotients.append(a)
            nxt = (x - a).inverse()
            key = (nxt.p, nxt.q, nxt.d)
            if key in self._seen:
                self.cycle_start = self._seen[key]
                self.cycle = self.quotients[self.cycle_start :]
            else:
                self._seen[key] = len(self.quotients)
            self._tail = nxt

    def _extend_enclosure(self, depth: int):
        while len(self.quotients) < depth:
            prefix = self._certified_prefix(len(self.quotients) + 1)
            if prefix is None:
                raise PrecisionExhausted(
                    f"continued fraction certified only to depth "
                    f"{len(self.quotients)} within {self._budget} digits"
                )
            self.quotients = prefix

    def _certified_prefix(self, depth: int):
        while self._dps <= self._budget:
            width = Fraction(1, 10**self._dps)
            lo, hi = (Fraction(v) for v in self._enclosure(width))
            iv = RatInterval(lo, hi)
            out = []
            ok = True
            for _ in range(depth):
                flo = iv.lo.numerator // iv.lo.denominator
                fhi = iv.hi.numerator // iv.hi.denominator
                if flo != fhi:
                    ok = False
                    break
                out.append(flo)
                lo2, hi2 = iv.lo - flo, iv.hi - flo
                if lo2 <= 0:
                    ok = False
                    break
                iv = RatInterval(1 / hi2, 1 / lo2)
            if ok:
                return out
            self._dps *= 2
        return None

    def partial_quotients(self, depth: int) -> list[int]:
        self.extend_to(depth)
        return self.quotients[:depth]

    @property
    def is_periodic(self) -> bool:
        return self.cycle is not None

    def value(self):
        if self._x0 is None:
            raise InvalidInputError("no exact value available")
        return self._x0

    # -- convergents ----------------------------------------------------------------

    def convergents(self, k: int) -> list[tuple[int, int]]:
        """(p_i, q_i) for i = 0..k-1; q_{-1} = 0, q_0 = 1 convention."""
        self.extend_to(k)
        while len(self._convs) < k:
            i = len(self._convs)
            a = self.quotients[i]
            if i == 0:
                self._convs.append((a, 1))
            elif i == 1:
                p0, q0 = self._convs[0]
                self._convs.append((a * p0 + 1, a * q0))
            else:
                p1, q1 = self._convs[i - 1]
                p0, q0 = self._convs[i - 2]
                self._convs.append((a * p1 + p0, a * q1 + q0))
        return self._convs[:k]

    def convergent_at(self, i: int) -> tuple[int, int]:
        return self.convergents(i + 1)[i]

    def theta(self, k: int):
        """theta_k = q_k x - p_k, exact (surd/rational backing)."""
        p, q = self.convergent_at(k)
        return q * as_exact(self.value()) - p

    def abs_theta(self, k: int):
        t = self.theta(k)
        return t if scalar_sign(t) >= 0 else -t


def cf_expand(x, depth: int) -> ContinuedFraction:
    """Expansion with at least `depth` certified partial quotients (fewer
    only for rationals, whose expansions terminate and are flagged)."""
    cf = ContinuedFraction.of(x)
    if cf.terminated:
        return cf
    cf.extend_to(depth)
    return cf


def convergents(cf: ContinuedFraction, k: int) -> list[tuple[int, int]]:
    return cf.convergents(k)


class ConvergentLadder:
    """Convergents of an eventually periodic expansion at huge indices.

    [[p_k, p_{k-1}], [q_k, q_{k-1}]] is the product of the quotient
    matrices [[a_i, 1], [1, 0]]; the cycle's matrix power bridges any gap
    in logarithmic time, which the sparse-digit target construction needs.
    """

    def __init__(self, cf: ContinuedFraction):
        if cf.terminated:
            raise InvalidInputError("ladder needs an infinite expansion")
        cf.extend_to(64)
        if not cf.is_periodic:
            cf.extend_to(2048)
        if not cf.is_periodic:
            raise UnsupportedProblemError("expansion did not reveal a period")
        self.cf = cf
        self.start = cf.cycle_start
        self.cycle = list(cf.cycle)
        self.pre_matrix = _mat_chain([cf.quotients[i] for i in range(self.start)])
        self.cycle_prefix = [_IDENT]
        for a in self.cycle:
            self.cycle_prefix.append(_mat_mul2(self.cycle_prefix[-1], _quot_mat(a)))
        self.cycle_matrix = self.cycle_prefix[-1]
        self._pow_cache: dict = {}
        self._matrix_cache: dict = {}
        self.x_triple = SurdTriple.from_surd(cf.value())

    def quotient_at(self, i: int) -> int:
        if i < self.start:
            return self.cf.quotients[i]
        return self.cycle[(i - self.start) % len(self.cycle)]

    def _cycle_pow(self, n: int):
        if n in self._pow_cache:
            return self._pow_cache[n]
        if n == 0:
            return _IDENT
        half = self._cycle_pow(n // 2)
        out = _mat_mul2(half, half)
        if n & 1:
            out = _mat_mul2(out, self.cycle_matrix)
        self._pow_cache[n] = out
        return out

    def matrix_to(self, k: int):
        """Product of quotient matrices for indices 0..k-1 (cached)."""
        if k in self._matrix_cache:
            return self._matrix_cache[k]
        if k <= self.start:
            M = _mat_chain([self.cf.quotients[i] for i in range(k)])
        else:
            full, part = divmod(k - self.start, len(self.cycle))
            M = _mat_mul2(self.pre_matrix, self._cycle_pow(full))
            M = _mat_mul2(M, self.cycle_prefix[part])
        if len(self._matrix_cache) < 4096:
            self._matrix_cache[k] = M
        return M

    def convergent_at(self, i: int) -> tuple[int, int]:
        M = self.matrix_to(i + 1)
        return M[0][0], M[1][0]

    def theta_triple(self, i: int) -> SurdTriple:
        """theta_i = q_i x - p_i as an unnormalized triple."""
        p, q = self.convergent_at(i)
        xt = self.x_triple
        return SurdTriple(q * xt.A - p * xt.R, q * xt.B, xt.D, xt.R)

    def abs_theta_triple(self, i: int) -> "SurdTriple":
        # theta_i has sign (-1)^i, so the absolute value needs no sign test
        t = self.theta_triple(i)
        return t if i % 2 == 0 else t.neg()

    def log2_q(self, i: int) -> float:
        """Estimate of log2(q_i) within +-2 bits, without materializing q."""
        if i < self.start + len(self.cycle) * 2:
            try:
                return float(self.convergent_at(i)[1].bit_length() - 1)
            except (OverflowError, MemoryError):  # pragma: no cover
                pass
        lam = self._cycle_log2()
        full, part = divmod(i + 1 - self.start, len(self.cycle))
        base = self.pre_matrix[1][0].bit_length() + self.cycle_prefix[part][1][0].bit_length()
        return float(base) + full * lam

    def _cycle_log2(self) -> float:
        if not hasattr(self, "_lam"):
            a, b = self.cycle_matrix[0]
            c, d = self.cycle_matrix[1]
            tr, det = a + d, a * d - b * c
            import math as _m

            shift = max(0, tr.bit_length() - 500)
            trf, detf = float(tr >> shift), float(det >> (2 * shift)) if shift else float(det)
            lam = (trf + _m.sqrt(max(trf * trf - 4 * detf, 0.0))) / 2
            self._lam = _m.log2(lam) + shift
        return self._lam

    def abs_theta(self, i: int, x: QuadraticSurd) -> QuadraticSurd:
        p, q = self.convergent_at(i)
        t = q * x - p
        return t if t.sign() >= 0 else -t


_IDENT = ((1, 0), (0, 1))


def _quot_mat(a: int):
    one, zero = _mpz(1), _mpz(0)
    return ((_mpz(a), one), (one, zero))


def _mat_mul2(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _mat_pow2(A, n: int):
    out = _IDENT
    while n:
        if n & 1:
            out = _mat_mul2(out, A)
        A = _mat_mul2(A, A)
        n >>= 1
    return out


def _mat_chain(quotients):
    M = _IDENT
    for a in quotients:
        M = _mat_mul2(M, _quot_mat(a))
    return M


# -- Diophantine-type estimation ------------------------------------------------------


@dataclass
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __repr__(self):
        return f"[{float(self.lo):.6f}, {float(self.hi):.6f}]"


@dataclass
class ScanResult:
    enclosure: Enclosure
    records: list  # monotone record sequence: (n, value)
    rational_flagged: bool = False

    def __repr__(self):
        return f"ScanResult({self.enclosure}, {len(self.records)} records)"


def _tight_rational(t, err_target: Fraction) -> tuple[Fraction, Fraction]:
    """(T, delta) with |t - T| <= delta <= err_target."""
    if isinstance(t, (int, Fraction)):
        return Fraction(t), Fraction(0)
    if isinstance(t, QuadraticSurd):
        lo, hi = t.enclosure(err_target)
        return (lo + hi) / 2, (hi - lo) / 2
    from .algebraic import AlgebraicReal

    if isinstance(t, AlgebraicReal):
        lo, hi = t.refine_to(err_target)
        return (lo + hi) / 2, (hi - lo) / 2
    if callable(t):
        lo, hi = (Fraction(v) for v in t(err_target))
        return (lo + hi) / 2, (hi - lo) / 2
    raise InvalidInputError(f"unsupported real {t!r}")


def estimate_L(t, s, n_max: int) -> ScanResult:
    """Certified enclosure of inf over 1 <= n <= n_max of n [n t - s]."""
    return _scan(t, s, n_max, window=None)


def estimate_Linf(t, s, n_max: int, window: Optional[int] = None) -> ScanResult:
    """Certified enclosure of the liminf proxy: the minimum of n [n t - s]
    restricted to the trailing window (early dips discarded).

    The default window keeps the trailing two thirds, wide enough to
    contain a best-approximation denominator for moderate partial
    quotients (the gap ratio between convergent denominators is a_k + 1).
    """
    if window is None:
        window = (2 * n_max) // 3
    return _scan(t, s, n_max, window=window)


def _scan(t, s, n_max: int, window: Optional[int]) -> ScanResult:
    err_target = Fraction(1, 10 ** (2 * len(str(n_max)) + 12))
    T, delta = _tight_rational(t, err_target)
    S = Fraction(s)
    den = T.denominator * S.denominator // math.gcd(T.denominator, S.denominator)
    TN = int(T * den)
    SN = int(S * den)
    start = max(1, n_max - window) if window is not None else 1
    r = (start * TN - SN) % den
    best_num = None
    records = []
    for n in range(start, n_max + 1):
        dist = min(r, den - r)
        num = n * dist
        if best_num is None or num < best_num:
            best_num = num
            records.append((n, Fraction(num, den)))
        r = (r + TN) % den
    center = Fraction(best_num, den)
    err = Fraction(n_max) ** 2 * delta + Fraction(n_max) * Fraction(0)
    return ScanResult(
        Enclosure(center - err, center + err),
        records,
        rational_flagged=(delta == 0 and isinstance(t, (int, Fraction))),
    )


# -- Ostrowski numeration ----------------------------------------------------------------


@dataclass
class OstrowskiExpansion:
    digits: list  # b_1, b_2, ...: digit i multiplies |theta_{i-1}|
    base: ContinuedFraction

    def legal(self) -> bool:
        qs = self.base.partial_quotients(len(self.digits) + 1)
        for i, b in enumerate(self.digits, start=1):
            if b < 0 or b > qs[i]:
                return False
        for i in range(1, len(self.digits)):
            # digits[i-1] is b_i; a full digit forces the next one to zero
            if self.digits[i - 1] == qs[i] and self.digits[i] != 0:
                return False
        return True


def ostrowski_expand(y, base, depth: int) -> OstrowskiExpansion:
    """Greedy digits of y in [0,1) over the rotation base (exact surds).

    The digit rules (b_i <= a_i; b_i = a_i forces b_{i+1} = 0) hold
    automatically for the greedy choice.
    """
    y = as_exact(y)
    if scalar_sign(y) < 0 or scalar_sign(y - 1) >= 0:
        raise InvalidInputError("y must lie in [0, 1)")
    cf = base if isinstance(base, ContinuedFraction) else ContinuedFraction.of(base)
    qs = cf.partial_quotients(depth + 1)
    digits = []
    rem = y
    for i in range(1, depth + 1):
        t = cf.abs_theta(i - 1)
        b = floor_exact(as_exact(rem) / t)
        if b > qs[i]:
            b = qs[i]
        if b < 0:
            b = 0
        digits.append(b)
        if b:
            rem = rem - b * t
    return OstrowskiExpansion(digits, cf)


def ostrowski_value(exp: OstrowskiExpansion, depth: Optional[int] = None):
    """(partial sum, tail bound): the represented value lies within the
    tail bound of the partial sum.  The telescoping identity
    a_i |theta_{i-1}| = |theta_{i-2}| - |theta_i| gives the exact tail
    bound |theta_{k-1}| + |theta_k|."""
    digits = exp.digits if depth is None else exp.digits[:depth]
    cf = exp.base
    acc = as_exact(0)
    for i, b in enumerate(digits, start=1):
        if b:
            acc = acc + b * cf.abs_theta(i - 1)
    k = len(digits)
    tail = cf.abs_theta(k - 1) + cf.abs_theta(k)
    return acc, tail


# -- constructive targets ---------------------------------------------------------------


@dataclass
class Psi:
    """Strictly decreasing positive test function in verifiable forms."""

    kind: str  # "geometric" | "inverse-power"
    c: Fraction = Fraction(1)
    beta: Fraction = Fraction(1, 2)
    power: int = 2

    @staticmethod
    def geometric(c, beta) -> "Psi":
        c, beta = Fraction(c), Fraction(beta)
        if c <= 0 or not (0 < beta < 1):
            raise InvalidInputError("geometric psi needs c > 0, 0 < beta < 1")
        return Psi("geometric", c=c, beta=beta)

    @staticmethod
    def inverse_power(power: int, c=1) -> "Psi":
        if power < 1 or Fraction(c) <= 0:
            raise InvalidInputError("inverse-power psi needs power >= 1, c > 0")
        return Psi("inverse-power", c=Fraction(c), power=power)

    def value(self, n) -> Fraction:
        n = int(n)
        if n < 1:
            raise InvalidInputError("psi arguments start at 1")
        if self.kind == "geometric":
            return self.c * self.beta**n
        return self.c / Fraction(n) ** self.power

    def compose_even(self) -> "Psi":
        """Sound lower bound of n -> psi(2n)."""
        if self.kind == "geometric":
            return Psi("geometric", c=self.c, beta=self.beta**2)
        return Psi("inverse-power", c=self.c / 2**self.power, power=self.power)

    def compose_odd(self) -> "Psi":
        """Sound lower bound of n -> psi(2n + 1)."""
        if self.kind == "geometric":
            return Psi("geometric", c=self.c * self.beta, beta=self.beta**2)
        return Psi("inverse-power", c=self.c / 3**self.power, power=self.power)


class SurdTriple:
    """(A + B sqrt(D)) / R without gcd normalization.

    The target construction manipulates values whose integer components
    run to hundreds of thousands of digits; Fraction's automatic gcd
    normalization would dominate the cost, so the hot path works on raw
    triples and normalizes exactly once at the end.
    """

    __slots__ = ("A", "B", "D", "R")

    def __init__(self, A: int, B: int, D: int, R: int):
        if R < 0:
            A, B, R = -A, -B, -R
        self.A, self.B, self.D, self.R = _mpz(A), _mpz(B), _mpz(D), _mpz(R)

    @staticmethod
    def from_surd(x: QuadraticSurd) -> "SurdTriple":
        R = x.p.denominator * x.q.denominator // math.gcd(
            x.p.denominator, x.q.denominator
        )
        return SurdTriple(int(x.p * R), int(x.q * R), x.d, R)

    def to_surd(self) -> QuadraticSurd:
        return QuadraticSurd(
            Fraction(int(self.A), int(self.R)),
            Fraction(int(self.B), int(self.R)),
            int(self.D),
        )

    def _common(self, other: "SurdTriple") -> tuple:
        if self.R == other.R:
            return self.A, self.B, other.A, other.B, self.R
        return (
            self.A * other.R,
            self.B * other.R,
            other.A * self.R,
            other.B * self.R,
            self.R * other.R,
        )

    def add(self, other: "SurdTriple") -> "SurdTriple":
        a1, b1, a2, b2, r = self._common(other)
        return SurdTriple(a1 + a2, b1 + b2, self.D, r)

    def sub(self, other: "SurdTriple") -> "SurdTriple":
        a1, b1, a2, b2, r = self._common(other)
        return SurdTriple(a1 - a2, b1 - b2, self.D, r)

    def sub_int(self, k: int) -> "SurdTriple":
        return SurdTriple(self.A - k * self.R, self.B, self.D, self.R)

    def times_int(self, k: int) -> "SurdTriple":
        return SurdTriple(self.A * k, self.B * k, self.D, self.R)

    def neg(self) -> "SurdTriple":
        return SurdTriple(-self.A, -self.B, self.D, self.R)

    def sign(self) -> int:
        A, B = self.A, self.B
        if B == 0:
            return (A > 0) - (A < 0)
        if A == 0:
            return 1 if B > 0 else -1
        if A > 0 and B > 0:
            return 1
        if A < 0 and B < 0:
            return -1
        lhs, rhs = A * A, B * B * self.D
        if A > 0:
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def abs(self) -> "SurdTriple":
        return self if self.sign() >= 0 else self.neg()

    def cmp_rational(self, num: int, den: int) -> int:
        """Compare against num/den (den > 0)."""
        num, den = _mpz(num), _mpz(den)
        diff = SurdTriple(self.A * den - num * self.R, self.B * den, self.D, self.R * den)
        return diff.sign()

    def floor(self) -> int:
        # one integer square root for floor(B sqrt(D)), then exact fixes
        if self.B == 0:
            return int(self.A // self.R)
        sq = self.B * self.B * self.D
        root = _isqrt(sq)
        m = root if self.B > 0 else (-root if root * root == sq else -(root + 1))
        base = (self.A + m) // self.R - 1
        for cand in (base + 2, base + 1, base):
            if self.cmp_rational(cand, 1) >= 0:
                if self.cmp_rational(cand + 1, 1) < 0:
                    return int(cand)
        raise AssertionError("triple floor bracket failed")

    def nearest_int_dist(self) -> "SurdTriple":
        f = self.floor()
        frac = self.sub_int(f)
        flip = frac.neg().sub_int(-1)  # 1 - frac
        return frac if frac.sub(flip).sign() <= 0 else flip

    def bounds(self, digits: int = 12) -> tuple[Fraction, Fraction]:
        """Rational enclosure of width 10^-digits (one integer sqrt)."""
        if self.B == 0:
            v = Fraction(int(self.A), int(self.R))
            return v, v
        scale = _mpz(10) ** digits
        sq = self.B * self.B * self.D * scale * scale
        root = _isqrt(sq)
        if self.B > 0:
            lo, hi = self.A * scale + root, self.A * scale + root + 1
        else:
            lo, hi = self.A * scale - root - 1, self.A * scale - root
        den = int(self.R * scale)
        return Fraction(int(lo), den), Fraction(int(hi), den)


@dataclass
class TargetWitness:
    """y with [n x - y] < psi(n) at every emitted index, all one parity."""

    y_exact: object  # exact value of the materialized target (SurdTriple)
    y_lo: Fraction
    y_hi: Fraction
    indices: list
    parity: str
    digits_used: int
    nearest_ints: list = None  # integer that each n x - y approximates


def construct_target(x, psi: Psi, interval, parity: str, count: int = 20) -> TargetWitness:
    """Inhomogeneous-approximation target inside the interval.

    The free Ostrowski digits control the construction: a locked prefix
    pins y inside the interval, isolated 1-digits at odd positions create
    the indices, and each index's error equals the digit tail beyond its
    position, which the placement keeps below psi.  Parities come from the
    doubled rotation, with the odd case shifted by x.
    """
    if parity not in ("even", "odd"):
        raise InvalidInputError("parity must be 'even' or 'odd'")
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if not (0 <= a < b <= 1):
        raise InvalidInputError("interval must sit inside [0, 1]")
    x = as_exact(x)
    if not isinstance(x, QuadraticSurd) or x.is_rational:
        raise UnsupportedProblemError(
            "constructive targets are implemented for quadratic irrationals"
        )
    two_x_floor = floor_exact(2 * x)
    x2 = 2 * x - two_x_floor
    if parity == "even":
        core = _construct_core(x2, psi.compose_even(), a, b, count)
        y_triple = core.y_triple
        indices = [2 * int(m) for m in core.indices]
        nearest = [
            int(mm + m * two_x_floor)
            for m, mm in zip(core.indices, core.nearest_ints)
        ]
    else:
        sub_lo, sub_hi = _shifted_subinterval(a, b, x)
        core = _construct_core(x2, psi.compose_odd(), sub_lo, sub_hi, count)
        shifted = core.y_triple.add(SurdTriple.from_surd(QuadraticSurd.of(x)))
        g = shifted.floor()
        y_triple = shifted.sub_int(g)
        indices = [2 * int(m) + 1 for m in core.indices]
        nearest = [
            int(mm + m * two_x_floor + g)
            for m, mm in zip(core.indices, core.nearest_ints)
        ]
    lo, hi = y_triple.bounds()
    out = TargetWitness(y_triple, lo, hi, indices, parity, core.digits_used)
    out.nearest_ints = nearest
    if y_triple.cmp_rational(a.numerator, a.denominator) < 0 or (
        y_triple.cmp_rational(b.numerator, b.denominator) > 0
    ):
        raise InvalidInputError("target left the interval")
    return out


def _shifted_subinterval(a: Fraction, b: Fraction, x) -> tuple[Fraction, Fraction]:
    """Rational subinterval of [0,1) whose shift by x lands inside [a, b]."""
    delta = b - a
    base = frac_exact(as_exact(a) - x)  # irrational
    blo, bhi = scalar_enclosure(base, delta / 100)
    lo = bhi + delta / 10
    hi = blo + delta * Fraction(9, 10)
    if hi <= 1:
        return lo, hi
    # wrapped: the image interval [base, base+delta] mod 1 has a piece at
    # the start of [0, 1)
    hi2 = blo + delta * Fraction(9, 10) - 1
    lo2 = max(Fraction(0), bhi - 1) + delta / 10
    if lo2 < hi2:
        return lo2, hi2
    return lo, Fraction(1)  # piece at the top


@dataclass
class _CoreResult:
    y_triple: SurdTriple
    indices: list
    nearest_ints: list  # the integer each n x - y is close to
    digits_used: int


def _construct_core(x, psi: Psi, a: Fraction, b: Fraction, count: int) -> _CoreResult:
    """Indices n with [n x - y] < psi(n) for a y in [a, b] (no parity).

    Exactness argument: with 1-digits at positions j_1 < ... < j_count and
    zeros elsewhere beyond the prefix, the error of index n_m is the tail
    sum of |theta| over later digits, bounded by |theta_{J-2}| +
    |theta_{J-1}| for J = j_{m+1}; each new position is pushed far enough
    that the bound at the previous index clears psi.  All arithmetic runs
    on unnormalized integer triples; the monotone position search uses
    bit-length prefilters before any exact giant-integer comparison.
    """
    cf = ContinuedFraction.of(x)
    ladder = ConvergentLadder(cf)
    delta = b - a
    mid = (a + b) / 2
    k0 = 1
    while True:
        t12 = ladder.abs_theta_triple(max(k0 - 1, 0)).add(ladder.abs_theta_triple(k0))
        half = delta / 2
        if t12.cmp_rational(half.numerator, half.denominator) < 0:
            break
        k0 += 1
    prefix = ostrowski_expand(mid, cf, k0).digits
    n_pre = 0
    m_pre = 0
    y_acc = SurdTriple(0, 0, ladder.x_triple.D, 1)
    for i, bd in enumerate(prefix, start=1):
        if bd:
            p, q = ladder.convergent_at(i - 1)
            sgn = 1 if (i % 2 == 1) else -1
            n_pre += sgn * bd * q
            m_pre += sgn * bd * p
            y_acc = y_acc.add(ladder.abs_theta_triple(i - 1).times_int(bd))
    indices: list[int] = []
    nearest: list[int] = []
    last_pos = k0 + 1  # leave one zero after the prefix (digit-rule safety)
    n_cur, m_cur = n_pre, m_pre

    def tail_ok(j: int) -> bool:
        # tail bound at position j versus psi at the previous index; the
        # prefilter's True answers are sound, and for positions small
        # enough to afford it the exact comparison resolves the ambiguous
        # band (minimality elsewhere is sacrificed, not correctness)
        if not indices:
            return True
        verdict = _tail_prefilter(ladder, j, psi, indices[-1])
        if verdict is not None:
            return verdict
        if j > 4096:
            return False  # treat the ambiguous band as inadmissible
        bound = ladder.abs_theta_triple(max(j - 2, 0)).add(
            ladder.abs_theta_triple(j - 1)
        )
        val = psi.value(indices[-1])
        return bound.cmp_rational(val.numerator, val.denominator) < 0

    def admissible(j: int) -> bool:
        if n_cur < 1:  # early indices may need the exact q to turn positive
            if n_cur + ladder.convergent_at(j - 1)[1] < 1:
                return False
        return tail_ok(j)

    for _ in range(count):
        j_min = last_pos + 1 if (last_pos + 1) % 2 == 1 else last_pos + 2
        j_hi = j_min
        step = 2
        while not admissible(j_hi):
            j_hi += step
            step *= 2
            if j_hi % 2 == 0:
                j_hi += 1
            if j_hi > 10**8:
                raise UnsupportedProblemError("digit position out of budget")
        lo, hi = j_min, j_hi
        while lo < hi:
            probe = (lo + hi) // 2
            if probe % 2 == 0:
                probe += 1
            if probe >= hi:
                break
            if admissible(probe):
                hi = probe
            else:
                lo = probe + 2
        j = hi
        p_new, q_new = ladder.convergent_at(j - 1)
        y_acc = y_acc.add(ladder.abs_theta_triple(j - 1))
        n_cur += q_new
        m_cur += p_new
        indices.append(n_cur)
        nearest.append(m_cur)
        last_pos = j
    return _CoreResult(y_acc, indices, nearest, last_pos)


def _tail_prefilter(ladder: ConvergentLadder, j: int, psi: Psi, n_prev: int):
    """Bit-length comparison of the tail bound against psi; None when the
    margin is under the slack and the exact test must run."""
    slack = 16.0
    # 1/(2 q_{j-1}) < |theta_{j-2}| + |theta_{j-1}| < 2 / q_{j-1}
    lg_q = ladder.log2_q(j - 1)
    if psi.kind == "inverse-power":
        lg_psi = (
            math.log2(float(psi.c.numerator))
            - math.log2(float(psi.c.denominator))
            - psi.power * n_prev.bit_length()
        )
    else:
        lg_psi = (
            math.log2(float(psi.c.numerator))
            - math.log2(float(psi.c.denominator))
            + min(int(n_prev), 10**15) * math.log2(float(psi.beta))
        )
    lg_tail_hi = 1.0 - lg_q
    lg_tail_lo = -1.0 - ladder.log2_q(j)
    if lg_tail_hi + slack < lg_psi:
        return True
    if lg_tail_lo - slack > lg_psi:
        return False
    return None


def verify_target(x, witness: TargetWitness, psi: Psi) -> bool:
    """Exact verification of [n x - y] < psi(n) at every emitted index.

    When the witness carries nearest-integer bookkeeping the check is two
    exact sign tests per index (|n x - y - m| < psi(n) and < 1/2); the
    fallback computes the nearest integer by exact floors.
    """
    x = as_exact(x)
    if isinstance(x, QuadraticSurd) and isinstance(witness.y_exact, SurdTriple):
        xt = SurdTriple.from_surd(x)
        yt = witness.y_exact
        for pos, n in enumerate(witness.indices):
            v = SurdTriple(n * xt.A, n * xt.B, xt.D, xt.R).sub(yt)
            if witness.nearest_ints is not None:
                m = witness.nearest_ints[pos]
                d = v.sub_int(m).abs()
                if d.cmp_rational(1, 2) >= 0:
                    return False
            else:
                d = v.nearest_int_dist()
            val = psi.value(n)
            if d.cmp_rational(val.numerator, val.denominator) >= 0:
                return False
        return True
    for n in witness.indices:
        d = nearest_dist(n * as_exact(x) - witness.y_exact)
        if scalar_sign(as_exact(psi.value(n)) - d) <= 0:
            return False
    return True


# -- enclosure-backed targets (transcendental rotation numbers) -------------------------


@dataclass
class ApproxTarget:
    """Target data over a certified-enclosure rotation number: exact
    indices and nearest integers, the target angle fraction only as an
    enclosure (its exact value would be transcendental)."""

    y_lo: Fraction
    y_hi: Fraction
    indices: list
    nearest_ints: list
    parity: str


def construct_target_enclosed(
    t_fn,
    psi: Psi,
    interval,
    parity: str,
    count: int,
    depth_budget: int = 400,
    max_index: int = 2 * 10**6,
) -> ApproxTarget:
    """The free-digit construction over a certified rotation-number
    enclosure (linear position walk; index sizes stay moderate).

    The emitted indices satisfy [n t - y*] < psi(n) for the exact target
    y* defined by the chosen digits over the true rotation number; the
    returned enclosure brackets y*.
    """
    if parity not in ("even", "odd"):
        raise InvalidInputError("parity must be 'even' or 'odd'")
    a, b = Fraction(interval[0]), Fraction(interval[1])
    max_index = max(1, (max_index - 1) // 2)  # cap applies to the final index
    # doubled rotation x = frac(2 t)
    prec = Fraction(1, 10**60)
    tlo, thi = (Fraction(v) for v in t_fn(prec))
    two_floor = math.floor(2 * tlo)
    if math.floor(2 * thi) != two_floor:
        raise InvalidInputError("rotation enclosure straddles a half-integer")

    def x_fn(width):
        l2, h2 = (Fraction(v) for v in t_fn(Fraction(width) / 2))
        return 2 * l2 - two_floor, 2 * h2 - two_floor

    cf = ContinuedFraction.of(x_fn, budget_dps=20000)
    psi2 = psi.compose_even() if parity == "even" else psi.compose_odd()
    if parity == "odd":
        # shift the landing interval by -t (mod 1)
        sub = _shift_interval_down(a, b, t_fn)
        a2, b2 = sub
    else:
        a2, b2 = a, b
    cf.extend_to(4)
    convs = lambda k: cf.convergents(k)  # noqa: E731
    # approximate thetas from a tight rational approximation of x
    xlo, xhi = x_fn(Fraction(1, 10**50))
    X = (xlo + xhi) / 2
    x_err = (xhi - xlo) / 2
    delta = b2 - a2
    mid = (a2 + b2) / 2
    k0 = 1
    while True:
        cf.extend_to(k0 + 2)
        q1 = cf.convergent_at(k0 - 1)[1] if k0 >= 1 else 1
        q_prev = cf.convergent_at(max(k0 - 1, 0))[1]
        q_cur = cf.convergent_at(k0)[1]
        if Fraction(1, q_prev) + Fraction(1, q_cur) < delta / 2:
            break
        k0 += 1
        if k0 > depth_budget:
            raise UnsupportedProblemError("prefix depth budget exhausted")
    # greedy prefix digits of mid over approximated thetas
    digits = {}
    rem = mid
    qs = cf.partial_quotients(k0 + 1)
    for i in range(1, k0 + 1):
        p_i, q_i = cf.convergent_at(i - 1)
        theta_approx = abs(q_i * X - p_i)
        if theta_approx == 0:
            break
        bnd = int(rem / theta_approx)
        bnd = min(bnd, qs[i])
        digits[i] = bnd
        rem -= bnd * theta_approx
    n_pre = sum(
        (1 if i % 2 == 1 else -1) * bd * cf.convergent_at(i - 1)[1]
        for i, bd in digits.items()
        if bd
    )
    m_pre = sum(
        (1 if i % 2 == 1 else -1) * bd * cf.convergent_at(i - 1)[0]
        for i, bd in digits.items()
        if bd
    )
    indices = []
    nearest = []
    n_cur, m_cur = n_pre, m_pre
    last_pos = k0 + 1
    for _ in range(count):
        j = last_pos + 1 if (last_pos + 1) % 2 == 1 else last_pos + 2
        stop = False
        while True:
            if j > depth_budget:
                stop = True  # emitted indices stay valid; just stop adding
                break
            cf.extend_to(j + 1)
            q_new = cf.convergent_at(j - 1)[1]
            if n_cur + q_new > max_index:
                stop = True
                break
            ok = n_cur + q_new >= 1
            if ok and indices:
                qa = cf.convergent_at(j - 2)[1]
                qb = cf.convergent_at(j - 1)[1]
                bound = Fraction(1, qa) + Fraction(1, qb)
                ok = bound < psi2.value(indices[-1])
            if ok:
                break
            j += 2
        if stop:
            break
        p_new, q_new = cf.convergent_at(j - 1)
        digits[j] = 1
        n_cur += q_new
        m_cur += p_new
        indices.append(n_cur)
        nearest.append(m_cur)
        last_pos = j
    # y* enclosure: digit sum over approximated thetas, plus slack for the
    # rational-approximation error of x (sum of b_i q_i |x - X|)
    y_approx = Fraction(0)
    slack = Fraction(0)
    for i, bd in digits.items():
        if bd:
            p_i, q_i = cf.convergent_at(i - 1)
            y_approx += bd * abs(q_i * X - p_i)
            slack += bd * q_i * x_err
    y_lo, y_hi = y_approx - slack, y_approx + slack
    if parity == "even":
        out_idx = [2 * int(m) for m in indices]
        out_near = [int(mm + m * two_floor) for m, mm in zip(indices, nearest)]
    else:
        tl, th = (Fraction(v) for v in t_fn(Fraction(1, 10**40)))
        y_lo, y_hi = y_lo + tl, y_hi + th
        shift = 0
        if y_lo >= 1:
            y_lo, y_hi, shift = y_lo - 1, y_hi - 1, 1
        out_idx = [2 * int(m) + 1 for m in indices]
        out_near = [
            int(mm + m * two_floor + shift) for m, mm in zip(indices, nearest)
        ]
    return ApproxTarget(y_lo, y_hi, out_idx, out_near, parity)


def _shift_interval_down(a: Fraction, b: Fraction, t_fn) -> tuple[Fraction, Fraction]:
    """Rational subinterval of [0,1) that lands in [a, b] after adding t."""
    tl, th = (Fraction(v) for v in t_fn(Fraction(1, 10**40)))
    delta = b - a
    lo = a - tl + delta / 10
    hi = a - th + delta * Fraction(9, 10)
    lo, hi = min(lo, hi), max(lo, hi)
    if lo < 0:
        lo, hi = lo + 1, hi + 1
    if hi > 1:
        if lo >= 1:
            lo, hi = lo - 1, hi - 1
        else:
            hi = Fraction(1)
    if not (0 <= lo < hi <= 1):
        raise InvalidInputError("shifted interval collapsed")
    return lo, hi
