"""Deciders for robust positivity and robust uniform ultimate positivity.

Pipeline: (1) constructive ultimate-positivity analysis of the center
sequence; (2) the derived sequence v encoding the ball-wide term
inequality; (3) the same analysis for v, with the dedicated double-root
order-4 machinery when v's growth collapses onto one modulus; (4) an exact
prefix check up to the combined threshold.  Every comparison on the
decision path is an exact sign test; UNSUPPORTED is returned whenever the
spectrum leaves the implemented envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import certificates as cert
from . import linalg
from .certificates import DecisionCertificate, Witness
from .neighbourhoods import Neighbourhood, derived_sequence, prefix_check, row_functionals
from .recurrences import (
    ClosedForm,
    LinearRecurrence,
    LrsInstance,
    closed_form,
    degeneracy_order,
    degenerate_decompose,
    instance_spectrum,
    unit_angle_order,
)
from .scalars import (
    Fraction as Rat,
    IncompatibleSurdError,
    InvalidInputError,
    QuadraticSurd,
    Scalar,
    UnsupportedProblemError,
    as_exact,
    scalar_enclosure,
    scalar_is_rational,
    scalar_sign,
    scalar_sqrt,
)

SCAN_CAP = 2_000_000


# -- generic constructive ultimate-positivity analysis -----------------------------


@dataclass
class UltimateAnalysis:
    verdict: str  # YES / NO
    threshold: Optional[int] = None  # u_n >= 0 for all n > threshold (YES)
    negative_index: Optional[int] = None  # some u_n < 0 (NO)
    trace: tuple = ()


def analyze_ultimate(inst: LrsInstance, _depth: int = 0) -> UltimateAnalysis:
    """Constructive ultimate positivity of a single sequence.

    Covers: all-real-root spectra, at most one irrational-angle conjugate
    pair at the dominant growth, and rational-angle (degenerate) spectra
    via the interleaving decomposition.  Raises UnsupportedProblemError
    outside that envelope (notably liminf zero with decaying terms, which
    needs Baker-type bounds).
    """
    if all(scalar_sign(c) == 0 for c in inst.init):
        return UltimateAnalysis("YES", threshold=0, trace=("zero-sequence",))
    if _depth == 0:
        k = degeneracy_order(inst)
        if k is not None:
            step = 2 * k
            subs = degenerate_decompose(inst, k)
            thresholds = []
            for j, sub in enumerate(subs):
                res = analyze_ultimate(sub, _depth=1)
                if res.verdict == "NO":
                    n = step * res.negative_index + j
                    return UltimateAnalysis(
                        "NO", negative_index=n, trace=("interleave", f"k={k}")
                    )
                thresholds.append(step * res.threshold + j)
            return UltimateAnalysis(
                "YES", threshold=max(thresholds), trace=("interleave", f"k={k}")
            )
    cf = closed_form(inst)
    groups = _growth_groups(cf)
    if not groups:
        return UltimateAnalysis("YES", threshold=0, trace=("zero-sequence",))
    lead = groups[0]
    rest = groups[1:]
    trace = (f"lead-growth l={lead.level}",)
    if len(lead.pairs) > 1:
        return _analyze_harmonic_lead(inst, lead, rest, trace)
    if lead.pairs:
        x, y, re, im = lead.pairs[0]
        amp_sq = x * x + y * y
        base = lead.z - _abs_scalar(lead.w)
        mu_sign = _sign_minus_sqrt(base, amp_sq)
        if mu_sign > 0:
            margin = _rational_lower_minus_sqrt(base, amp_sq)
            N = _tail_threshold(lead, margin, rest)
            return UltimateAnalysis("YES", threshold=N, trace=trace + ("liminf>0",))
        if mu_sign < 0:
            n = _find_negative(inst)
            return UltimateAnalysis("NO", negative_index=n, trace=trace + ("liminf<0",))
        if not rest:
            return UltimateAnalysis("YES", threshold=0, trace=trace + ("liminf=0 tight",))
        raise UnsupportedProblemError(
            "liminf zero against decaying terms (Diophantine-hard case)"
        )
    # pure real dominant growth
    if scalar_sign(lead.z) > 0:
        margin = _rational_lower(lead.z)
        N = _tail_threshold(lead, margin, rest)
        return UltimateAnalysis("YES", threshold=N, trace=trace + ("real>0",))
    if scalar_sign(lead.z) < 0 or scalar_sign(lead.w) != 0:
        n = _find_negative(inst)
        return UltimateAnalysis("NO", negative_index=n, trace=trace + ("real-neg",))
    raise UnsupportedProblemError("empty dominant group")  # unreachable


def _analyze_harmonic_lead(inst, lead, rest, trace) -> UltimateAnalysis:
    """Several dominant pairs sharing one base rotation: the liminf is the
    exact minimum of a trigonometric polynomial.

    Each pair must be an exact power of a common base pair (checked in the
    tower) and the coefficients rational; the minimum is computed through
    the half-angle parametrization and exact root isolation.  Distinct
    incommensurate angles stay unsupported (simultaneous approximation).
    """
    harmonics = _match_harmonics(lead.pairs)
    if harmonics is None:
        raise UnsupportedProblemError("multiple dominant conjugate pairs")
    coeffs = {}
    for k, x, y in harmonics:
        if not (scalar_is_rational(x) and scalar_is_rational(y)):
            raise UnsupportedProblemError("irrational harmonic coefficients")
        xr = Rat(QuadraticSurd.of(x).as_fraction())
        yr = Rat(QuadraticSurd.of(y).as_fraction())
        ax, ay = coeffs.get(k, (Rat(0), Rat(0)))
        coeffs[k] = (ax + xr, ay + yr)
    if not (scalar_is_rational(lead.z) and scalar_is_rational(lead.w)):
        raise UnsupportedProblemError("irrational dominant coefficients")
    z = Rat(QuadraticSurd.of(lead.z).as_fraction())
    w = Rat(QuadraticSurd.of(lead.w).as_fraction())
    mu = trig_poly_min(z - abs(w), coeffs)
    mu_sign = mu.sign()
    if mu_sign > 0:
        width = Rat(1, 1024)
        while True:
            lo, _ = mu.refine_to(width)
            if lo > 0:
                margin = lo
                break
            width /= 1024
        N = _tail_threshold(lead, margin, rest)
        return UltimateAnalysis("YES", threshold=N, trace=trace + ("harmonic-min>0",))
    if mu_sign < 0:
        n = _find_negative(inst)
        return UltimateAnalysis(
            "NO", negative_index=n, trace=trace + ("harmonic-min<0",)
        )
    if not rest:
        return UltimateAnalysis("YES", threshold=0, trace=trace + ("harmonic-min=0",))
    raise UnsupportedProblemError("harmonic liminf zero against decaying terms")


def _match_harmonics(pairs):
    """[(k, x, y)] when every pair is base^k for one base pair, else None."""
    # base: the pair whose angle is smallest makes every other an exact
    # power; try each candidate as base
    for bi, (bx, by, bre, bim) in enumerate(pairs):
        ok = []
        for x, y, re, im in pairs:
            k = _power_index(bre, bim, re, im)
            if k is None:
                ok = None
                break
            ok.append((k, x, y))
        if ok is not None:
            return ok
    return None


def _power_index(bre, bim, re, im, cap: int = 8):
    cr, ci = as_exact(1), as_exact(0)
    for k in range(1, cap + 1):
        cr, ci = cr * bre - ci * bim, cr * bim + ci * bre
        if scalar_sign(cr - re) == 0 and scalar_sign(ci - im) == 0:
            return k
    return None


def trig_poly_min(const: Rat, coeffs: dict):
    """Exact minimum over the circle of
        const + sum_k x_k cos(k t) + y_k sin(k t)
    with rational coefficients, as an AlgebraicReal.

    Half-angle substitution makes the target a rational function N/D with
    D = (1 + tau^2)^K > 0; candidates are the real critical points plus the
    point at infinity (t = pi).
    """
    from . import intpoly as ip
    from .algebraic import AlgebraicReal, algebraic_poly_value

    K = max(coeffs) if coeffs else 0
    if K == 0:
        return AlgebraicReal.from_rational(const)
    # Re_k, Im_k of ((1 - tau^2) + 2 i tau)^k as rational polynomials
    base_re, base_im = [Rat(1), Rat(0), Rat(-1)], [Rat(0), Rat(2)]
    one = [Rat(1), Rat(0), Rat(1)]  # 1 + tau^2
    terms = {}
    cur_re, cur_im = [Rat(1)], [Rat(0)]
    for k in range(1, K + 1):
        cur_re, cur_im = (
            _pm_sub(_pm_mul(cur_re, base_re), _pm_mul(cur_im, base_im)),
            _pm_add(_pm_mul(cur_re, base_im), _pm_mul(cur_im, base_re)),
        )
        terms[k] = (cur_re, cur_im)
    N = [Rat(0)]
    for k, (x, y) in coeffs.items():
        scale = _pm_pow(one, K - k)
        part = _pm_add(
            [x * c for c in terms[k][0]], [y * c for c in terms[k][1]]
        )
        N = _pm_add(N, _pm_mul(part, scale))
    N = _pm_add(N, [const * c for c in _pm_pow(one, K)])
    D = _pm_pow(one, K)
    from .algebraic import _frac_ratio_clear

    Np, Dp = _frac_ratio_clear(N, D)
    # critical points: roots of N' D - N D'
    crit = ip.add(
        ip.mul(ip.derivative(Np), Dp), ip.neg(ip.mul(Np, ip.derivative(Dp)))
    )
    candidates = []
    # t = pi corresponds to tau -> infinity: value = const + sum (-1)^k x_k
    at_pi = const + sum(((-1) ** k) * x for k, (x, y) in coeffs.items())
    candidates.append(AlgebraicReal.from_rational(at_pi))
    if ip.normalize(crit):
        sf = ip.squarefree_part(crit)
        for lo, hi in ip.isolate_squarefree(sf):
            tau = (
                AlgebraicReal.from_rational(lo)
                if lo == hi
                else AlgebraicReal(sf, lo, hi)
            )
            candidates.append(algebraic_poly_value(tau, Np, Dp))
    best = candidates[0]
    for cand in candidates[1:]:
        if cand.compare(best) < 0:
            best = cand
    return best


def _pm_mul(a, b):
    out = [Rat(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pm_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Rat(0)) + (b[i] if i < len(b) else Rat(0))
        for i in range(n)
    ]


def _pm_sub(a, b):
    return _pm_add(a, [-x for x in b])


def _pm_pow(a, k):
    out = [Rat(1)]
    for _ in range(k):
        out = _pm_mul(out, a)
    return out


@dataclass
class _Group:
    modulus_sq: Scalar
    level: int
    z: Scalar  # positive-real-root coefficient
    w: Scalar  # negative-real-root coefficient
    pairs: list  # (x, y, re, im)
    abs_bound: Rat  # rational upper bound on the group's normalized swing


def _growth_groups(cf: ClosedForm) -> list:
    """Nonzero closed-form contributions grouped by growth (modulus^2,
    level), sorted fastest first."""
    table: dict = {}

    def bucket(msq, l):
        for key in table:
            if key[1] == l and scalar_sign(key[0] - msq) == 0:
                return table[key]
        g = _Group(msq, l, as_exact(0), as_exact(0), [], Rat(0))
        table[(msq, l)] = g
        return g

    for t in cf.real_terms:
        msq = t.root * t.root
        for l in range(t.mult):
            if scalar_sign(t.coeffs[l]) != 0:
                g = bucket(msq, l)
                if scalar_sign(t.root) > 0:
                    g.z = g.z + t.coeffs[l]
                else:
                    g.w = g.w + t.coeffs[l]
    for t in cf.pair_terms:
        msq = t.modulus_sq
        for l in range(t.mult):
            x, y = t.cos_coeffs[l], t.sin_coeffs[l]
            if scalar_sign(x) != 0 or scalar_sign(y) != 0:
                g = bucket(msq, l)
                g.pairs.append((x, y, t.re, t.im))
    groups = list(table.values())
    for g in groups:
        bound = abs(_rational_upper(_abs_scalar(g.z))) + abs(
            _rational_upper(_abs_scalar(g.w))
        )
        for x, y, _, _ in g.pairs:
            bound += _rational_upper(_abs_scalar(x)) + _rational_upper(_abs_scalar(y))
        g.abs_bound = bound

    import functools

    def cmp(a: _Group, b: _Group) -> int:
        s = scalar_sign(a.modulus_sq - b.modulus_sq)
        if s != 0:
            return s
        return (a.level > b.level) - (a.level < b.level)

    groups.sort(key=functools.cmp_to_key(cmp), reverse=True)
    return groups


def _abs_scalar(x: Scalar) -> Scalar:
    return x if scalar_sign(x) >= 0 else -x


def _rational_upper(x: Scalar) -> Rat:
    lo, hi = scalar_enclosure(x, Rat(1, 1000))
    return hi


def _rational_lower(x: Scalar) -> Rat:
    lo, hi = scalar_enclosure(x, Rat(1, 1000))
    return lo


def _rational_lower_pos(x: Scalar) -> Rat:
    """Strictly positive rational lower bound of a positive scalar."""
    width = Rat(1, 1000)
    while True:
        lo, _ = scalar_enclosure(x, width)
        if lo > 0:
            return lo
        width /= 1024


def _sign_minus_sqrt(base: Scalar, rad: Scalar) -> int:
    """Exact sign of base - sqrt(rad), rad >= 0."""
    if scalar_sign(rad) == 0:
        return scalar_sign(base)
    sb = scalar_sign(base)
    if sb <= 0:
        return -1
    return scalar_sign(base * base - rad)


def _rational_lower_minus_sqrt(base: Scalar, rad: Scalar) -> Rat:
    """Positive rational lower bound of base - sqrt(rad) (must be > 0)."""
    width = Rat(1, 64)
    while True:
        blo = _enc(base, width)[0]
        rhi = _enc(rad, width)[1]
        from .scalars import sqrt_bounds

        _, shi = sqrt_bounds(max(rhi, Rat(0)), width)
        cand = blo - shi
        if cand > 0:
            return cand
        width /= 64


def _enc(x: Scalar, width):
    return scalar_enclosure(x, width)


def _tail_threshold(lead: _Group, margin: Rat, rest: list) -> int:
    """Smallest certified N with
        margin * rho^n n^l  >  sum_j C_j rho_j^n n^(l_j)   for all n > N,
    where (rho, l) is the lead growth and the C_j over-approximate the
    slower groups' swings.

    Equal-modulus groups (detected exactly) are divided out so the check
    reduces to a rational polynomial inequality plus geometrically
    decaying strictly-smaller-modulus terms; every per-term ratio is
    eventually decreasing, making the doubling search sound.
    """
    if margin <= 0:
        raise InvalidInputError("tail threshold needs a positive margin")
    if not rest:
        return 0
    eq_items = []  # same modulus, lower level: (level, C)
    lt_items = []  # strictly smaller modulus: (msq_hi, level, C)
    lead_lo = _rational_lower_pos(lead.modulus_sq)
    for g in rest:
        s = scalar_sign(g.modulus_sq - lead.modulus_sq)
        if s == 0:
            eq_items.append((g.level, g.abs_bound))
            continue
        if s > 0:
            raise InvalidInputError("group ordering broken")
        width = Rat(1, 1000)
        while True:
            _, msq_hi = scalar_enclosure(g.modulus_sq, width)
            if msq_hi < lead_lo:
                break
            width /= 1024
        lt_items.append((msq_hi, g.level, g.abs_bound))
    start = 1
    for msq_hi, l, _ in lt_items:
        dl = l - lead.level
        if dl > 0:
            n0 = 1
            while Rat(n0 + 1, n0) ** (2 * dl) * msq_hi > lead_lo:
                n0 *= 2
                if n0 > SCAN_CAP:
                    raise UnsupportedProblemError("tail bound did not stabilize")
            start = max(start, n0)

    def ok(n: int) -> bool:
        # polynomial part: margin n^l - sum_eq C n^(l_j) must be positive
        poly = margin * Rat(n) ** lead.level
        for l, C in eq_items:
            poly -= C * Rat(n) ** l
        if poly <= 0:
            return False
        if not lt_items:
            return True
        rhs = Rat(0)
        for msq_hi, l, C in lt_items:
            rhs += C * _sqrt_upper(msq_hi**n * Rat(n) ** (2 * l))
        # poly * rho^n > rhs, certified via poly^2 * lead_lo^n > rhs^2
        return poly * poly * lead_lo**n > rhs * rhs

    n = start
    while not ok(n):
        n *= 2
        if n > SCAN_CAP:
            raise UnsupportedProblemError("tail threshold out of budget")
    lo, hi = start, n
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _sqrt_upper(x: Rat) -> Rat:
    """Tight rational upper bound on sqrt(x)."""
    if x <= 0:
        return Rat(0)
    s = math.isqrt(x.numerator * x.denominator)
    return Rat(s + 1, x.denominator)


def _find_negative(inst: LrsInstance, start: int = 0) -> int:
    """First index with u_n < 0 (guaranteed to exist by the caller's
    analysis); exact iteration with a hard cap."""
    k = inst.order
    state = list(inst.init)
    a = inst.recurrence.coeffs
    for n in range(SCAN_CAP):
        if n < k:
            val = inst.init[n]
        else:
            val = a[0] * state[0]
            for i in range(1, k):
                val = val + a[i] * state[i]
            state = state[1:] + [val]
        if n >= start and scalar_sign(val) < 0:
            return n
    raise UnsupportedProblemError("negative term not found within the scan cap")


# -- order-4 double-root machinery ---------------------------------------------------


@dataclass
class Order4Coefficients:
    """Exact coefficients of the derived inequality for the spectrum
    {1, 1, gamma, conj(gamma)} in the basis (n, 1, rho^n cos, rho^n sin):
    v_n = z2 n^2 + z1 n + z0 + x2 n r_n + y2 n s_n + x1 r_n + y1 s_n
          + w rho^(2n) + x0 rho^(2n) cos(2 n theta) + y0 rho^(2n) sin(2 n theta)
    with r_n = rho^n cos(n theta), s_n = rho^n sin(n theta)."""

    z2: Scalar
    z1: Scalar
    z0: Scalar
    x2: Scalar
    y2: Scalar
    x1: Scalar
    y1: Scalar
    w: Scalar
    x0: Scalar
    y0: Scalar
    rho_sq: Scalar
    gamma: tuple  # (re, im)
    p: list  # center coefficients in the basis

    def case_label(self) -> str:
        if scalar_sign(self.rho_sq - 1) < 0:
            return "rho_lt_1"
        if scalar_sign(self.z2) != 0:
            return "z2_nonzero"
        mu = _sign_minus_sqrt(self.z1, self.x2 * self.x2 + self.y2 * self.y2)
        if mu < 0:
            return "mu_neg"
        if mu > 0:
            return "mu_pos"
        g = self.g_at_phase()
        sg = scalar_sign(g)
        if sg > 0:
            return "mu_zero_g_pos"
        if sg < 0:
            return "mu_zero_g_neg"
        raise InvalidInputError(
            "impossible case: f and g cannot vanish together at the phase"
        )

    def phase(self) -> tuple:
        """(cos phi, sin phi) with the phase chosen so the level-1
        trigonometric part attains its minimum there (only meaningful in
        the liminf-zero case, where z1 = |(x2, y2)| exactly)."""
        if scalar_sign(self.z1) == 0:
            raise InvalidInputError("zero liminf coefficient has no phase")
        return (-self.x2 / self.z1, -self.y2 / self.z1)

    def g_at_phase(self) -> Scalar:
        c, s = self.phase()
        c2 = 2 * c * c - 1
        s2 = 2 * s * c
        return self.z0 + self.w + self.x1 * c + self.y1 * s + self.x0 * c2 + self.y0 * s2

    def max_g_bound(self) -> Rat:
        """Sound rational overestimate of sup |g|."""
        total = _rational_upper(_abs_scalar(self.z0)) + _rational_upper(
            _abs_scalar(self.w)
        )
        for xx, yy in ((self.x1, self.y1), (self.x0, self.y0)):
            total += _rational_upper(_abs_scalar(xx)) + _rational_upper(
                _abs_scalar(yy)
            )
        return total


def order4_coefficients(inst: LrsInstance, nb: Neighbourhood) -> Order4Coefficients:
    """Table of derived-inequality coefficients for a normalized
    {1, 1, gamma, conj gamma} spectrum (double root exactly 1)."""
    spec = instance_spectrum(inst)
    double = [r for r, m in spec["real"] if m == 2 and scalar_sign(r - 1) == 0]
    if len(double) != 1 or len(spec["pairs"]) != 1 or inst.order != 4:
        raise UnsupportedProblemError("not a normalized double-root order-4 spectrum")
    re, im, mult = spec["pairs"][0]
    if mult != 1:
        raise UnsupportedProblemError("repeated complex pair")
    rho_sq = re * re + im * im
    if scalar_sign(rho_sq - 1) > 0:
        raise UnsupportedProblemError("complex pair dominates the double root")
    if unit_angle_order(re, im) is not None:
        raise InvalidInputError("degenerate pair: use the interleaving decomposition")
    # basis rows q_n = [n, 1, Re gamma^n, Im gamma^n]
    from .recurrences import _pow_complex

    V = []
    for n in range(4):
        re_n, im_n = _pow_complex(re, im, n)
        V.append([as_exact(n), as_exact(1), re_n, im_n])
    W = linalg.inverse(V)
    p = linalg.mat_vec(W, list(inst.init))
    M = linalg.mat_mul(W, linalg.mat_mul(nb.S_inv, linalg.transpose(W)))
    p1, p2, p3, p4 = p
    z2 = p1 * p1 - M[0][0]
    z1 = 2 * p1 * p2 - 2 * M[0][1]
    z0 = p2 * p2 - M[1][1]
    x2 = 2 * p1 * p3 - 2 * M[0][2]
    y2 = 2 * p1 * p4 - 2 * M[0][3]
    x1 = 2 * p2 * p3 - 2 * M[1][2]
    y1 = 2 * p2 * p4 - 2 * M[1][3]
    w = (p3 * p3 + p4 * p4) / 2 - (M[2][2] + M[3][3]) / 2
    x0 = (p3 * p3 - p4 * p4) / 2 - (M[2][2] - M[3][3]) / 2
    # the cross term 2(p3 p4 - M23) C S contributes with the half from
    # cos sin = sin(2 theta)/2
    y0 = p3 * p4 - M[2][3]
    return Order4Coefficients(
        z2, z1, z0, x2, y2, x1, y1, w, x0, y0, rho_sq, (re, im), list(p)
    )


def order4_analyze(inst: LrsInstance, nb: Neighbourhood):
    """Coefficients plus the case label of the derived-inequality
    analysis."""
    coeffs = order4_coefficients(inst, nb)
    return coeffs, coeffs.case_label()


def compute_N2_mu_positive(coeffs: Order4Coefficients) -> int:
    """Threshold when the level-1 liminf is positive: beyond
    max|g| / liminf the linear group dominates the bounded one."""
    mu_low = _rational_lower_minus_sqrt(
        coeffs.z1, coeffs.x2 * coeffs.x2 + coeffs.y2 * coeffs.y2
    )
    gmax = coeffs.max_g_bound()
    return int(math.ceil(gmax / mu_low)) + 1


def compute_N2_g_positive(coeffs: Order4Coefficients) -> int:
    """Threshold for the liminf-zero, g(phase) > 0 case.

    Exact trigonometric-polynomial root isolation (in c = cos(t - phase))
    bounds the region where g < 0 away from the phase; on that region the
    level-1 part has a positive lower bound, which yields the threshold.
    """
    from . import intpoly as ip

    cph, sph = coeffs.phase()
    # rotate the level-0 trig coefficients into delta = t - phase coordinates
    X1 = coeffs.x1 * cph + coeffs.y1 * sph
    Y1 = -coeffs.x1 * sph + coeffs.y1 * cph
    c2, s2 = 2 * cph * cph - 1, 2 * sph * cph
    X0 = coeffs.x0 * c2 + coeffs.y0 * s2
    Y0 = -coeffs.x0 * s2 + coeffs.y0 * c2
    const = coeffs.z0 + coeffs.w
    # g~(delta) = const + X1 c + Y1 s + X0 (2c^2 - 1) + Y0 (2 c s)
    if not all(
        scalar_is_rational(v) for v in (const, X1, Y1, X0, Y0, coeffs.z1)
    ):
        raise UnsupportedProblemError("irrational phase data in the g-analysis")
    const, X1_, Y1_, X0_, Y0_, z1 = (
        Rat(QuadraticSurd.of(v).as_fraction())
        for v in (const, X1, Y1, X0, Y0, coeffs.z1)
    )
    # region g~ <= 0 on the circle: g~ = P(c) + s Q(c) with s^2 = 1 - c^2;
    # every boundary point satisfies R(c) := P(c)^2 - (1-c^2) Q(c)^2 = 0
    P = [const - X0_, X1_, 2 * X0_]
    Q = [Y1_, 2 * Y0_]
    R = _poly_sub(
        _poly_mul_frac(P, P),
        _poly_mul_frac([Rat(1), Rat(0), Rat(-1)], _poly_mul_frac(Q, Q)),
    )
    Rp = ip.from_fractions(R)
    # an exact upper bound on max{c : some circle point with cos = c has
    # g~ <= 0}: the maximum is attained on the boundary (g~(1, 0) > 0), so
    # the largest root of R below 1 is a sound cap; root-interval upper
    # endpoints only make the bound more conservative
    cstar = None
    if ip.normalize(Rp) and ip.degree(ip.normalize(Rp)) >= 1:
        sf = ip.squarefree_part(Rp)
        for lo, hi in ip.isolate_squarefree(sf):
            if lo > 1 or hi < -1:
                continue
            if lo == hi:  # rational root
                if lo >= 1:
                    continue  # R(1) > 0, so this root is beyond the circle cap
                cap = lo
            else:
                root = _isolate_to_algebraic(sf, lo, hi)
                while root.hi >= 1 and root.lo <= 1:
                    root.refine_to((root.hi - root.lo) / 64)
                if root.lo > 1:
                    continue
                cap = root.hi
            if cstar is None or cap > cstar:
                cstar = cap
    if cstar is None:
        return 1  # g is never negative
    cstar = min(cstar, Rat(1))
    f_min = z1 * (1 - cstar)
    if f_min <= 0:
        raise InvalidInputError("degenerate gap in the g-positive analysis")
    gmax = coeffs.max_g_bound()
    return int(math.ceil(gmax / f_min)) + 1


def _isolate_to_algebraic(poly, lo, hi):
    from .algebraic import AlgebraicReal

    if lo == hi:
        return AlgebraicReal.from_rational(lo)
    return AlgebraicReal(poly, lo, hi)


def _poly_mul_frac(a, b):
    out = [Rat(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Rat(0)) - (b[i] if i < len(b) else Rat(0))
        for i in range(n)
    ]


def detect_infinite_violations_g_negative(
    coeffs: Order4Coefficients, v_inst: LrsInstance, want: int = 3
) -> list[int]:
    """Explicit violating indices for the liminf-zero, g(phase) < 0 case.

    The analysis guarantees infinitely many; the certificate demonstrates
    a handful by exact scanning with horizon escalation.
    """
    if coeffs.case_label() != "mu_zero_g_neg":
        raise InvalidInputError("only applicable in the g-negative case")
    out = []
    horizon = 4096
    while len(out) < want:
        out = _scan_negatives(v_inst, horizon, want)
        if horizon > SCAN_CAP:
            raise UnsupportedProblemError("violation search exhausted its budget")
        horizon *= 8
    return out


def _scan_negatives(inst: LrsInstance, horizon: int, want: int) -> list[int]:
    k = inst.order
    state = list(inst.init)
    a = inst.recurrence.coeffs
    found = []
    for n in range(min(horizon, SCAN_CAP)):
        if n < k:
            val = inst.init[n]
        else:
            val = a[0] * state[0]
            for i in range(1, k):
                val = val + a[i] * state[i]
            state = state[1:] + [val]
        if scalar_sign(val) < 0:
            found.append(n)
            if len(found) >= want:
                return found
    return found


# -- spectra routing -----------------------------------------------------------------


def _normalize_double_root(inst: LrsInstance, nb: Neighbourhood):
    """Rescale a {r, r, gamma, conj} spectrum so the double root is 1.

    Returns (inst', nb') with positivity over the ball preserved, or None
    when the spectrum does not match."""
    try:
        spec = instance_spectrum(inst)
    except UnsupportedProblemError:
        return None
    if inst.order != 4 or len(spec["pairs"]) != 1:
        return None
    doubles = [r for r, m in spec["real"] if m == 2]
    if len(doubles) != 1 or len(spec["real"]) != 1:
        return None
    r = doubles[0]
    if scalar_sign(r) <= 0 or not scalar_is_rational(r):
        return None
    re, im, _ = spec["pairs"][0]
    rho_sq = re * re + im * im
    if scalar_sign(rho_sq - r * r) > 0:
        return None  # pair dominates; handled elsewhere
    rr = Rat(QuadraticSurd.of(r).as_fraction())
    if rr == 1:
        return inst, nb
    k = inst.order
    D = [[(Rat(1) / rr**i if i == j else Rat(0)) for j in range(k)] for i in range(k)]
    a = inst.recurrence.coeffs
    a_new = [a[i] / rr ** (k - i) for i in range(k)]
    c_new = [inst.init[i] / rr**i for i in range(k)]
    Dinv = [[(rr**i if i == j else Rat(0)) for j in range(k)] for i in range(k)]
    S_new = linalg.mat_mul(Dinv, linalg.mat_mul(nb.S, Dinv))
    return LrsInstance(LinearRecurrence(a_new), c_new), Neighbourhood(S_new)


def _analyze_derived(inst: LrsInstance, nb: Neighbourhood, v: LrsInstance, trace: list):
    """Ultimate positivity of the derived sequence: generic analysis first,
    then the order-4 table machinery for the collapsed-growth case."""
    try:
        return analyze_ultimate(v)
    except UnsupportedProblemError as exc:
        norm = _normalize_double_root(inst, nb)
        if norm is None:
            raise
        inst_n, nb_n = norm
        coeffs, label = order4_analyze(inst_n, nb_n)
        trace.append(f"order4:{label}")
        v_n = derived_sequence(inst_n, nb_n)
        if label in ("rho_lt_1", "z2_nonzero"):
            # the generic analysis already covers these; if it bailed the
            # instance is genuinely outside the envelope
            raise
        if label == "mu_pos":
            return UltimateAnalysis(
                "YES", threshold=compute_N2_mu_positive(coeffs), trace=("order4", label)
            )
        if label == "mu_neg":
            n = _find_negative(v_n)
            return UltimateAnalysis("NO", negative_index=n, trace=("order4", label))
        if label == "mu_zero_g_pos":
            return UltimateAnalysis(
                "YES", threshold=compute_N2_g_positive(coeffs), trace=("order4", label)
            )
        if label == "mu_zero_g_neg":
            hits = detect_infinite_violations_g_negative(coeffs, v_n)
            return UltimateAnalysis(
                "NO", negative_index=hits[0], trace=("order4", label)
            )
        raise UnsupportedProblemError(f"unhandled order-4 case {label}")


# -- witnesses -------------------------------------------------------------------------


def violation_witness(inst: LrsInstance, nb: Neighbourhood, n: int) -> Witness:
    """Exact witness for a failed term inequality at index n: either the
    center itself (u_n < 0) or the boundary minimizer of the term."""
    u_n = inst.evaluate(n)
    if scalar_sign(u_n) < 0:
        zero = [as_exact(0)] * inst.order
        return Witness(n, list(inst.init), zero, value=u_n)
    h = row_functionals(inst, n + 1)[n]
    try:
        d = directed_direction(nb, h)
        c_prime_probe = [c - di for c, di in zip(inst.init, d)]
        LrsInstance(inst.recurrence, c_prime_probe).evaluate(min(n, 2))
    except (UnsupportedProblemError, IncompatibleSurdError):
        return _rational_witness(inst, nb, n, h)
    c_prime = [c - di for c, di in zip(inst.init, d)]
    val = LrsInstance(inst.recurrence, c_prime).evaluate(n)
    if scalar_sign(val) >= 0:
        raise InvalidInputError(f"witness at n={n} does not verify")
    return Witness(n, c_prime, [-di for di in d], value=val)


def _rational_witness(inst: LrsInstance, nb: Neighbourhood, n: int, h: list) -> Witness:
    """Rational in-ball witness approximating the boundary minimizer, used
    when the exact minimizer leaves the surd tower.  The violation is
    strict, so a close enough rational point still verifies exactly."""
    Sinv_h = linalg.mat_vec(nb.S_inv, [as_exact(x) for x in h])
    norm_sq = linalg.vec_dot([as_exact(x) for x in h], Sinv_h)
    prec = Rat(1, 2**20)
    for _ in range(12):
        lo, hi = scalar_enclosure(norm_sq, prec)
        root_hi = _sqrt_upper(hi)
        d = []
        for x in Sinv_h:
            xlo, xhi = scalar_enclosure(x, prec)
            d.append(((xlo + xhi) / 2) / root_hi)
        q = linalg.vec_dot(d, linalg.mat_vec(nb.S, d))
        if scalar_sign(q - 1) > 0:  # scale strictly inside the ball
            shrink = 1 / _sqrt_upper(_rational_upper(q))
            d = [x * shrink for x in d]
        c_prime = [c - di for c, di in zip(inst.init, d)]
        val = LrsInstance(inst.recurrence, c_prime).evaluate(n)
        if scalar_sign(val) < 0:
            return Witness(n, c_prime, [-di for di in d], value=val)
        prec /= 2**10
    raise InvalidInputError(f"no rational witness found at n={n}")


def directed_direction(nb: Neighbourhood, h: list) -> list:
    """S^{-1} h / sqrt(h^T S^{-1} h): the boundary direction minimizing the
    term with row functional h (to be subtracted from the center)."""
    hs = [as_exact(x) for x in h]
    Sinv_h = linalg.mat_vec(nb.S_inv, hs)
    norm_sq = linalg.vec_dot(hs, Sinv_h)
    if scalar_sign(norm_sq) == 0:
        return [as_exact(0)] * nb.dim
    root = scalar_sqrt(norm_sq)
    if root is None:
        raise UnsupportedProblemError("irrational ball radius outside the surd tower")
    inv = root.inverse() if isinstance(root, QuadraticSurd) else 1 / root
    return [x * inv for x in Sinv_h]


# -- the public deciders ------------------------------------------------------------------


def decide_robust_positivity(
    inst: LrsInstance, nb: Neighbourhood
) -> DecisionCertificate:
    """Is every initialisation in the closed ball positive (all terms >= 0)?"""
    trace: list = ["robust-positivity"]
    if nb.dim != inst.order:
        raise InvalidInputError("neighbourhood dimension mismatch")
    try:
        return _decide_positivity_inner(inst, nb, trace)
    except IncompatibleSurdError as exc:
        return cert.unsupported(f"mixed radicands: {exc}", trace=trace)


def _decide_positivity_inner(inst, nb, trace) -> DecisionCertificate:
    early = prefix_check(inst, nb, 32)
    if early is not None:
        trace.append("prefix-violation")
        return cert.no(violation_witness(inst, nb, early), trace=trace)
    try:
        center = analyze_ultimate(inst)
    except UnsupportedProblemError as exc:
        return cert.unsupported(f"center analysis: {exc}", trace=trace)
    if center.verdict == "NO":
        trace.append("center-ultimately-negative")
        return cert.no(
            violation_witness(inst, nb, center.negative_index), trace=trace
        )
    N1 = center.threshold
    v = derived_sequence(inst, nb)
    try:
        der = _analyze_derived(inst, nb, v, trace)
    except UnsupportedProblemError as exc:
        return cert.unsupported(f"derived analysis: {exc}", trace=trace)
    if der.verdict == "NO":
        trace.extend(der.trace)
        return cert.no(violation_witness(inst, nb, der.negative_index), trace=trace)
    N2 = der.threshold
    N = max(N1, N2)
    hit = prefix_check(inst, nb, N)
    if hit is not None:
        trace.append("prefix-violation")
        return cert.no(violation_witness(inst, nb, hit), trace=trace)
    trace.extend(center.trace)
    trace.extend(der.trace)
    return cert.yes(N1=N1, N2=N2, N=N, trace=trace, prefix_checked=N)


def decide_robust_uniform_ultimate(
    inst: LrsInstance, nb: Neighbourhood
) -> DecisionCertificate:
    """Does one threshold make every initialisation in the ball positive
    beyond it?"""
    trace: list = ["robust-uniform-ultimate"]
    if nb.dim != inst.order:
        raise InvalidInputError("neighbourhood dimension mismatch")
    try:
        return _decide_uniform_ultimate_inner(inst, nb, trace)
    except IncompatibleSurdError as exc:
        return cert.unsupported(f"mixed radicands: {exc}", trace=trace)


def _decide_uniform_ultimate_inner(inst, nb, trace) -> DecisionCertificate:
    try:
        center = analyze_ultimate(inst)
    except UnsupportedProblemError:
        center = None
    if center is not None and center.verdict == "NO":
        # the center itself is ultimately non-positive: infinitely many
        # violations at the center
        trace.append("center-ultimately-negative")
        return cert.no(
            violation_witness(inst, nb, center.negative_index), trace=trace
        )
    v = derived_sequence(inst, nb)
    try:
        der = _analyze_derived(inst, nb, v, trace)
    except UnsupportedProblemError as exc:
        der = None
        derived_reason = str(exc)
    if der is None or center is None:
        simple = simple_pipeline(inst, nb, trace)
        if simple is not None:
            return simple
        reason = "center analysis unsupported" if center is None else derived_reason
        return cert.unsupported(reason, trace=trace)
    if der.verdict == "NO":
        trace.extend(der.trace)
        return cert.no(violation_witness(inst, nb, der.negative_index), trace=trace)
    N = max(center.threshold, der.threshold)
    trace.extend(center.trace)
    trace.extend(der.trace)
    return cert.yes(N1=center.threshold, N2=der.threshold, N=N, trace=trace)


def simple_pipeline(
    inst: LrsInstance, nb: Neighbourhood, trace: Optional[list] = None
) -> Optional[DecisionCertificate]:
    """Uniform-ultimate decision path for simple characteristic polynomials.

    Classifies the derived sequence's dominant spectrum against the two
    structured conditions -- (a) all roots dominant, (b) at most three
    dominant conjugate pairs -- and answers via liminf analysis when at
    most one irrational-angle pair dominates.  Returns None when the
    instance is not simple, an UNSUPPORTED certificate when the structured
    analysis does not apply.
    """
    trace = trace if trace is not None else []
    rec = inst.recurrence
    if not rec.is_rational:
        return None
    from . import intpoly as ip

    cp = rec.char_poly_int()
    if ip.squarefree_part(cp) != ip.primitive(cp):
        return None  # not simple
    trace.append("simple-pipeline")
    v = derived_sequence(inst, nb)
    try:
        cf = closed_form(v)
    except UnsupportedProblemError as exc:
        return cert.unsupported(f"derived spectrum: {exc}", trace=trace)
    groups = _growth_groups(cf)
    spectrum_groups = cf.spectrum()
    moduli = [m for m, *_ in spectrum_groups]
    max_mod = moduli[0]
    for m in moduli[1:]:
        if scalar_sign(m - max_mod) > 0:
            max_mod = m
    dominant = [
        g for g in spectrum_groups if scalar_sign(g[0] - max_mod) == 0
    ]
    n_pairs_dominant = sum(1 for g in dominant if g[2] == "pair")
    if len(dominant) == len(spectrum_groups):
        trace.append("condition-a")
    elif n_pairs_dominant <= 3:
        trace.append("condition-b")
    else:
        return cert.unsupported(
            f"{n_pairs_dominant} dominant conjugate pairs in the derived sequence",
            trace=trace,
        )
    try:
        der = analyze_ultimate(v)
        center = analyze_ultimate(inst)
    except UnsupportedProblemError as exc:
        return cert.unsupported(f"structured analysis: {exc}", trace=trace)
    if center.verdict == "NO":
        return cert.no(
            violation_witness(inst, nb, center.negative_index), trace=trace
        )
    if der.verdict == "NO":
        return cert.no(violation_witness(inst, nb, der.negative_index), trace=trace)
    N = max(center.threshold, der.threshold)
    return cert.yes(N1=center.threshold, N2=der.threshold, N=N, trace=trace)
