"""Order-5 hardness instances tying robust positivity to Diophantine
approximation.

The characteristic roots are 1, 1, 1 and a unit-circle pair; the tuned
coefficient vector and the basis-aligned neighbourhood turn the term
inequality into `quadratic growth + rotation defect >= guess * norm`,
whose truth pattern pins the quantity n [n t - s] between two explicit
bounds.  A bisection on the guess then encloses the Lagrange constant,
with the suffix questions answered by a pluggable oracle (the shipped
scan oracle is explicitly heuristic: these are exactly the instances the
low-order deciders must refuse)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import linalg
from .algebraic import is_root_of_unity
from .angles import pi_enclosure, rotation_number_enclosure
from .neighbourhoods import Neighbourhood
from .recurrences import LinearRecurrence, LrsInstance, _pow_complex
from .scalars import (
    InvalidInputError,
    QuadraticSurd,
    Scalar,
    UnsupportedProblemError,
    as_exact,
    scalar_sign,
    scalar_sqrt,
    sqrt_bounds,
)


class UndecidableAtBudget(Exception):
    """The certified comparison straddled equality beyond the precision
    cap; reported rather than silently resolved."""


@dataclass
class ReductionInstance:
    cos_theta: Scalar
    sin_theta: Scalar
    cos_phi: Scalar
    sin_phi: Scalar
    r: Fraction
    recurrence: LinearRecurrence
    p: list
    V: list  # 5x5 basis rows q_n
    init: list  # c = V p
    nb: Neighbourhood  # S with S^{-1} = r^2 V V^T

    def lrs(self) -> LrsInstance:
        return LrsInstance(self.recurrence, self.init)

    def rotation_number(self) -> Callable:
        return rotation_number_enclosure(self.cos_theta, self.sin_theta)

    def phase_fraction(self) -> Callable:
        return rotation_number_enclosure(self.cos_phi, self.sin_phi)


def build_instance(cos_theta, cos_phi, r) -> ReductionInstance:
    """Assemble the order-5 reduction instance for guess r > 0.

    The characteristic polynomial is (X-1)^3 (X^2 - 2 cos(theta) X + 1);
    the unit-circle root must not be a root of unity (the rotation number
    has to be irrational for the reduction to say anything).
    """
    cos_theta = as_exact(cos_theta)
    cos_phi = as_exact(cos_phi)
    r = Fraction(r)
    if r <= 0:
        raise InvalidInputError("the guess r must be positive")
    sin_theta = scalar_sqrt(1 - cos_theta * cos_theta)
    sin_phi = scalar_sqrt(1 - cos_phi * cos_phi)
    if sin_theta is None or sin_phi is None:
        raise UnsupportedProblemError("sines leave the quadratic tower")
    if scalar_sign(sin_theta) == 0:
        k = 1 if scalar_sign(cos_theta - 1) == 0 else 2
        raise InvalidInputError(f"unit root is a root of unity (k={k})")
    k = is_root_of_unity(cos_theta, sin_theta)
    if k is not None:
        raise InvalidInputError(f"unit root is a root of unity (k={k})")
    # characteristic polynomial (X-1)^3 (X^2 - 2 c X + 1), low-first
    quad = [as_exact(1), -2 * cos_theta, as_exact(1)]
    cube = [as_exact(-1), as_exact(3), as_exact(-3), as_exact(1)]
    cp = _polymul(cube, quad)
    rec = LinearRecurrence([-cp[i] for i in range(5)])
    V = basis_rows(cos_theta, sin_theta, cos_phi, sin_phi, 5)
    p = [as_exact(r), as_exact(0), as_exact(1 + r / 2), as_exact(-1), as_exact(0)]
    init = linalg.mat_vec(V, p)
    r2 = as_exact(r * r)
    S_inv = linalg.mat_mul(V, linalg.transpose(V))
    S_inv = [[r2 * x for x in row] for row in S_inv]
    S = linalg.inverse(S_inv)
    nb = Neighbourhood(S)
    return ReductionInstance(
        cos_theta, sin_theta, cos_phi, sin_phi, r, rec, p, V, init, nb
    )


def _polymul(a, b):
    out = [as_exact(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def basis_rows(cos_theta, sin_theta, cos_phi, sin_phi, count: int) -> list:
    """Rows q_n = [n^2, n, 1, cos(n theta - phi), sin(n theta - phi)],
    exactly (angle addition inside the tower)."""
    rows = []
    for n in range(count):
        c_n, s_n = _pow_complex(cos_theta, sin_theta, n)
        cos_d = c_n * cos_phi + s_n * sin_phi
        sin_d = s_n * cos_phi - c_n * sin_phi
        rows.append([as_exact(n * n), as_exact(n), as_exact(1), cos_d, sin_d])
    return rows


def cos_defect(inst: ReductionInstance, n: int, prev=None):
    """cos(n theta - phi) and sin(n theta - phi), exactly; `prev` allows
    incremental stepping from an earlier index."""
    if prev is None:
        c_n, s_n = _pow_complex(inst.cos_theta, inst.sin_theta, n)
    else:
        n0, c0, s0 = prev
        dc, ds = _pow_complex(inst.cos_theta, inst.sin_theta, n - n0)
        c_n, s_n = c0 * dc - s0 * ds, s0 * dc + c0 * ds
    cos_d = c_n * inst.cos_phi + s_n * inst.sin_phi
    sin_d = s_n * inst.cos_phi - c_n * inst.sin_phi
    return (c_n, s_n), (cos_d, sin_d)


DIGIT_BUDGET = 4_000_000


def critical_inequality_holds(inst: ReductionInstance, n: int, _cache=None) -> bool:
    """Does <p, q_n> >= r ||q_n|| hold at index n?  Exact.

    Uses the grouped form r n^2 + r/2 + 1 - cos(n theta - phi)
    >= r sqrt(n^4 + n^2 + 2); the left side lives in the tower and the
    right side is a pure square root, so the comparison is a sign test.
    Raises UndecidableAtBudget when the exact cosine would exceed the
    digit budget (never silently resolved).
    """
    den = QuadraticSurd.of(inst.cos_theta).p.denominator
    import math as _m

    if den > 1 and n * _m.log10(den) > DIGIT_BUDGET:
        raise UndecidableAtBudget(
            f"exact rotation data at n={n} needs more than {DIGIT_BUDGET} digits"
        )
    (c_n, s_n), (cos_d, _) = cos_defect(inst, n, prev=_cache)
    lhs = as_exact(inst.r) * (n * n) + as_exact(inst.r) / 2 + 1 - cos_d
    rad = n**4 + n**2 + 2
    # lhs >= r sqrt(rad): sign analysis without leaving the tower
    s = scalar_sign(lhs)
    if s < 0:
        return False
    diff = lhs * lhs - as_exact(inst.r * inst.r) * rad
    return scalar_sign(diff) >= 0


def psi_holds(inst: ReductionInstance, n: int) -> bool:
    """Spec-facing alias with the norm-form crosscheck available in tests."""
    return critical_inequality_holds(inst, n)


def norm_form_holds(inst: ReductionInstance, n: int) -> bool:
    """<p, q_n> >= r ||q_n|| evaluated directly from the basis row."""
    (c_n, s_n), (cos_d, sin_d) = cos_defect(inst, n)
    q_n = [as_exact(n * n), as_exact(n), as_exact(1), cos_d, sin_d]
    lhs = linalg.vec_dot(inst.p, q_n)
    norm_sq = linalg.vec_dot(q_n, q_n)
    if scalar_sign(lhs) < 0:
        return False
    return scalar_sign(lhs * lhs - as_exact(inst.r * inst.r) * norm_sq) >= 0


def q_ratio(n: int) -> QuadraticSurd:
    """Q(n) = (7n^2 + 14) / (2 (n^2 + R)(n^2 + 4 + R)), R = sqrt(n^4+n^2+2),
    exactly as a quadratic surd.

    This is the decay envelope with `1 - cos(2 pi (n t - s)) >= r Q(n)`
    equivalent to the critical inequality; 8 n^2 Q(n) / 7 increases to 1.
    """
    if n < 1:
        raise InvalidInputError("Q(n) needs n >= 1")
    rad = n**4 + n**2 + 2
    R = QuadraticSurd(0, 1, rad)
    den = (QuadraticSurd(n * n) + R) * (QuadraticSurd(n * n + 4) + R) * 2
    return QuadraticSurd(7 * n * n + 14) / den


def stability_index(r, eps) -> int:
    """N making both numeric clauses of the reduction hold for n >= N.

    Clause 1 (envelope): Q(n) > 7 (1-eps)^2 / (8 n^2), certified through
    the bound sqrt(n^4+n^2+2) < n^2 + 1 (n >= 2), which reduces the claim
    to a quartic polynomial inequality.
    Clause 2 (cosine-square comparability): 1 - cos x < 7r/(8N^2) forces
    1 - cos x >= (1-eps)^2 x^2 / 2, via the Taylor and Jordan bounds.
    """
    r, eps = Fraction(r), Fraction(eps)
    if r <= 0 or not (0 < eps < 1):
        raise InvalidInputError("need r > 0 and 0 < eps < 1")
    # Q(n) > 7 (1-eps)^2 / (8 n^2) reduces, via sqrt(n^4+n^2+2) < n^2 + 1
    # for n >= 2, to 8 n^2 (7 n^2 + 14) > 14 (1-eps)^2 (2n^2+1)(2n^2+5)
    c = 14 * (1 - eps) ** 2
    from . import intpoly as ip

    poly = ip.from_fractions(
        [-5 * c, Fraction(0), 112 - 12 * c, Fraction(0), 56 - 4 * c]
    )
    N1 = 2
    for lo, hi in ip.isolate_squarefree(ip.squarefree_part(poly)):
        N1 = max(N1, math.floor(hi) + 1)
    # clause 2: pi^2 * (7 r / (8 N^2)) / 2 <= 12 (2 eps - eps^2)
    pi_sq_hi = Fraction(987, 100) / Fraction(1)  # 9.87 > pi^2
    bound = Fraction(7) * r * pi_sq_hi / (Fraction(16) * 12 * (2 * eps - eps * eps))
    N2 = 1
    while Fraction(N2) ** 2 < bound:
        N2 += 1
    return max(N1, N2, 2)


def shift_instance(inst: ReductionInstance, N: int) -> tuple[list, Neighbourhood]:
    """Suffix-to-full-sequence shift: c' = A^N c, S' = (A^-N)^T S A^-N."""
    from .recurrences import companion

    A = companion(inst.recurrence)
    AN = linalg.mat_pow(A, N)
    c_new = linalg.mat_vec(AN, inst.init)
    A_inv = linalg.inverse(A)
    AinvN = linalg.mat_pow(A_inv, N)
    S_new = linalg.mat_mul(
        linalg.transpose(AinvN), linalg.mat_mul(inst.nb.S, AinvN)
    )
    return c_new, Neighbourhood(S_new)


# -- the approximation loop ----------------------------------------------------------


@dataclass
class SuffixScanOracle:
    """Heuristic suffix oracle: checks the critical inequality exactly at
    sampled indices of [N, N + horizon] and extrapolates.  Honest about
    what it is: the low-order deciders cannot answer these order-5
    questions, which is the whole point of the construction."""

    horizon: int = 20_000
    rigorous: bool = False  # a genuine order-5 decider could be slotted in

    def __call__(self, inst: ReductionInstance, N: int) -> bool:
        return _simple_scan(inst, N, self.horizon)


def _simple_scan(inst: ReductionInstance, N: int, horizon: int, samples=None) -> bool:
    """Dense check of the equivalent inequality 1 - cos(2 pi (n t - s))
    >= r Q(n) over [N, N + horizon].

    Runs on tight rational approximations of the rotation data (integer
    walk, float comparisons with a margin); ambiguous indices fall back to
    the exact tower test re-derivable at any single n.
    """
    prec = Fraction(1, 10 ** (2 * len(str(N + horizon)) + 20))
    tlo, thi = (Fraction(v) for v in inst.rotation_number()(prec))
    slo, shi = (Fraction(v) for v in inst.phase_fraction()(prec))
    T, S = (tlo + thi) / 2, (slo + shi) / 2
    den = T.denominator * S.denominator // math.gcd(T.denominator, S.denominator)
    TN, SN = int(T * den), int(S * den)
    r_f = float(inst.r)
    rr = (N * TN - SN) % den
    for n in range(N, N + horizon + 1):
        d = min(rr, den - rr) / den
        lhs = 1.0 - math.cos(2.0 * math.pi * d)
        rhs = r_f * (7.0 * n * n + 14.0) / (
            2.0
            * (n * n + math.sqrt(n**4 + n * n + 2.0))
            * (n * n + 4 + math.sqrt(n**4 + n * n + 2.0))
        )
        if lhs < rhs - 1e-9 * (1 + rhs):
            return False
        if lhs < rhs + 1e-9 * (1 + rhs):
            if not critical_inequality_holds(inst, n):
                return False
        rr = (rr + TN) % den
    return True


@dataclass
class LagrangeApproximation:
    lo: Fraction
    hi: Fraction
    queries: list  # (r, verdict)
    oracle_rigorous: bool


def approximate_lagrange(
    cos_theta,
    cos_phi,
    eps=Fraction(1, 10),
    oracle: Optional[Callable] = None,
    steps: int = 12,
    r_hi=Fraction(4),
) -> LagrangeApproximation:
    """Bisection on the guess r, converting each suffix answer through the
    two implication bounds:
        yes at r  =>  liminf n [n t - s] >= (1 - eps) sqrt(7 r) / (4 pi)
        no at r   =>  liminf n [n t - s] <= sqrt(7 r) / ((1 - eps) 4 pi).
    """
    eps = Fraction(eps)
    rigorous = False
    if oracle is None:
        oracle_fn = SuffixScanOracle(horizon=100_000)
    else:
        oracle_fn = oracle
    rigorous = getattr(oracle_fn, "rigorous", False)
    r_lo = Fraction(0)
    r_hi = Fraction(r_hi)
    queries = []
    for _ in range(steps):
        r_mid = (r_lo + r_hi) / 2
        if r_mid == 0:
            break
        inst = build_instance(cos_theta, cos_phi, r_mid)
        N = stability_index(r_mid, eps)
        verdict = oracle_fn(inst, N)
        queries.append((r_mid, verdict))
        if verdict:
            r_lo = r_mid
        else:
            r_hi = r_mid
    pi_lo, pi_hi = pi_enclosure(Fraction(1, 10**12))
    lo = Fraction(0)
    if r_lo > 0:
        s_lo, _ = sqrt_bounds(7 * r_lo, Fraction(1, 10**12))
        lo = (1 - eps) * s_lo / (4 * pi_hi)
    _, s_hi = sqrt_bounds(7 * r_hi, Fraction(1, 10**12))
    hi = s_hi / ((1 - eps) * 4 * pi_lo)
    return LagrangeApproximation(lo, hi, queries, rigorous)
