"""Dense integer polynomials: exact arithmetic, Sturm chains, resultants,
squarefree decomposition, and complete factorization over Q up to degree 5.

Coefficients are stored constant-term first.  Everything here is exact;
rational interval endpoints are the only approximate artifacts produced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import InvalidInputError

Coeffs = tuple[int, ...]


def normalize(cs: Iterable[int]) -> Coeffs:
    out = list(cs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(cs: Sequence[int]) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(cs) - 1


def content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g


def primitive(cs: Sequence[int]) -> Coeffs:
    """Primitive part with positive leading coefficient."""
    cs = normalize(cs)
    if not cs:
        return ()
    g = content(cs)
    if cs[-1] < 0:
        g = -g
    return tuple(c // g for c in cs)


def from_fractions(fs: Sequence[Fraction]) -> Coeffs:
    """Clear denominators of a rational polynomial."""
    den = 1
    for f in fs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return normalize(int(f * den) for f in fs)


def add(a: Sequence[int], b: Sequence[int]) -> Coeffs:
    n = max(len(a), len(b))
    return normalize(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def neg(a: Sequence[int]) -> Coeffs:
    return tuple(-c for c in a)


def mul(a: Sequence[int], b: Sequence[int]) -> Coeffs:
    if not normalize(a) or not normalize(b):
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return normalize(out)


def eval_at(cs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def eval_int(cs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def sign_at(cs: Sequence[int], x: Fraction) -> int:
    v = eval_at(cs, x)
    return (v > 0) - (v < 0)


def derivative(cs: Sequence[int]) -> Coeffs:
    return normalize(i * cs[i] for i in range(1, len(cs)))


def divmod_frac(
    a: Sequence[Fraction], b: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    while r and r[-1] == 0:
        r.pop()
    q = [Fraction(0)] * max(0, len(r) - len(b) + 1)
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i in range(len(b)):
            r[k + i] -= c * b[i]
        while r and r[-1] == 0:
            r.pop()
    return q, r


def div_exact(a: Sequence[int], b: Sequence[int]) -> Coeffs:
    """Exact integer-polynomial quotient; the division must be exact."""
    q, r = divmod_frac([Fraction(c) for c in a], [Fraction(c) for c in b])
    if r:
        raise InvalidInputError("inexact polynomial division")
    if any(f.denominator != 1 for f in q):
        raise InvalidInputError("quotient not an integer polynomial")
    return normalize(int(f) for f in q)


def gcd(a: Sequence[int], b: Sequence[int]) -> Coeffs:
    """Primitive gcd (positive leading coefficient)."""
    fa = [Fraction(c) for c in normalize(a)]
    fb = [Fraction(c) for c in normalize(b)]
    while fb:
        _, r = divmod_frac(fa, fb)
        fa = fb
        fb = [Fraction(c) for c in primitive(from_fractions(r))] if r else []
    if not fa:
        return ()
    return primitive(from_fractions(fa))


def squarefree_part(cs: Sequence[int]) -> Coeffs:
    cs = primitive(cs)
    if degree(cs) <= 0:
        return cs
    g = gcd(cs, derivative(cs))
    if degree(g) == 0:
        return cs
    q, _ = divmod_frac([Fraction(c) for c in cs], [Fraction(c) for c in g])
    return primitive(from_fractions(q))


def squarefree_decomposition(cs: Sequence[int]) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm: [(factor, multiplicity)], factors squarefree and
    pairwise coprime; product of factor^mult equals primitive(cs)."""
    p = primitive(cs)
    if degree(p) <= 0:
        return []
    out: list[tuple[Coeffs, int]] = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = div_exact(p, a)
    c = div_exact(dp, a)
    d = add(c, neg(derivative(b)))
    i = 1
    while degree(b) > 0:
        f = gcd(b, d)
        if degree(f) > 0:
            out.append((primitive(f), i))
        b = div_exact(b, f)
        c2 = div_exact(d, f)
        d = add(c2, neg(derivative(b)))
        i += 1
    return out


def shift(cs: Sequence[int], a: int) -> Coeffs:
    """p(x + a) by synthetic division."""
    out = list(normalize(cs))
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return normalize(out)


def reverse(cs: Sequence[int]) -> Coeffs:
    """x^deg * p(1/x)."""
    return normalize(reversed(normalize(cs)))


def scale_roots(cs: Sequence[int], num: int, den: int) -> Coeffs:
    """Polynomial whose roots are (num/den) times the roots of cs."""
    if num == 0:
        raise InvalidInputError("zero scale")
    cs = normalize(cs)
    d = degree(cs)
    return primitive(normalize(cs[i] * den**i * num ** (d - i) for i in range(d + 1)))


def shift_roots_rational(cs: Sequence[int], r: Fraction) -> Coeffs:
    """Polynomial whose roots are (roots of cs) + r, i.e. p(x - r) cleared."""
    cs = normalize(cs)
    d = degree(cs)
    out = [Fraction(0)] * (d + 1)
    for c in reversed(cs):
        new = [Fraction(0)] * (d + 1)
        for i in range(d):
            new[i + 1] += out[i]
        for i in range(d + 1):
            new[i] -= out[i] * r
        new[0] += c
        out = new
    return primitive(from_fractions(out))


def compose_square(cs: Sequence[int]) -> Coeffs:
    """p(x^2): roots are the square roots of roots of p."""
    cs = normalize(cs)
    out = [0] * (2 * degree(cs) + 1)
    for i, c in enumerate(cs):
        out[2 * i] = c
    return normalize(out)


def cauchy_root_bound(cs: Sequence[int]) -> Fraction:
    """All real roots lie strictly inside (-B, B)."""
    cs = normalize(cs)
    lead = abs(cs[-1])
    m = max((abs(c) for c in cs[:-1]), default=0)
    return 1 + Fraction(m, lead)


def _primitive_signed(cs: Sequence[int]) -> Coeffs:
    """Content reduction that keeps the sign (Sturm chains need it)."""
    cs = normalize(cs)
    if not cs:
        return ()
    g = content(cs)
    return tuple(c // g for c in cs)


def sturm_chain(cs: Sequence[int]) -> list[Coeffs]:
    p0 = _primitive_signed(cs)
    p1 = _primitive_signed(derivative(p0))
    chain = [p0]
    if p1:
        chain.append(p1)
    while len(chain) >= 2 and degree(chain[-1]) > 0:
        _, r = divmod_frac(
            [Fraction(c) for c in chain[-2]], [Fraction(c) for c in chain[-1]]
        )
        if not r:
            break
        chain.append(_primitive_signed(from_fractions([-x for x in r])))
    return [c for c in chain if c]


def _sign_variations(vals: list[int]) -> int:
    signs = [v for v in vals if v != 0]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def sturm_count(chain: list[Coeffs], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]."""
    va = _sign_variations([sign_at(p, a) for p in chain])
    vb = _sign_variations([sign_at(p, b) for p in chain])
    return va - vb


def count_real_roots_between(cs: Sequence[int], a: Fraction, b: Fraction) -> int:
    sf = squarefree_part(cs)
    if degree(sf) <= 0:
        return 0
    return sturm_count(sturm_chain(sf), a, b)


def isolate_squarefree(cs: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for all real roots of a squarefree
    polynomial, ascending.  Rational roots come back as degenerate [r, r];
    other intervals are open with non-root endpoints.
    """
    cs = primitive(cs)
    d = degree(cs)
    if d <= 0:
        return []
    if d == 1:
        r = Fraction(-cs[0], cs[1])
        return [(r, r)]
    rats = rational_roots(cs)
    if rats:
        rest = cs
        for r in rats:
            rest = div_exact_rational(rest, primitive((-r.numerator, r.denominator)))
        others = []
        for lo, hi in isolate_squarefree(rest):
            # keep stripped rational roots strictly outside every interval
            for r in rats:
                while lo <= r <= hi and lo != hi:
                    mid = (lo + hi) / 2
                    if eval_at(rest, mid) == 0 or mid == r:
                        mid = (lo + 2 * hi) / 3
                    slo = sign_at(rest, lo)
                    if sign_at(rest, mid) == slo:
                        lo = mid
                    else:
                        hi = mid
            others.append((lo, hi))
        out = [(r, r) for r in rats] + others
        out.sort(key=lambda iv: iv[0])
        return out
    ch = sturm_chain(cs)
    B = cauchy_root_bound(cs)
    out: list[tuple[Fraction, Fraction]] = []

    def recurse(lo: Fraction, hi: Fraction, nroots: int):
        if nroots <= 0:
            return
        if nroots == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if eval_at(cs, mid) == 0:
            eps = (hi - lo) / 8
            while sturm_count(ch, mid - eps, mid + eps) > 1 or eval_at(
                cs, mid - eps
            ) == 0 or eval_at(cs, mid + eps) == 0:
                eps /= 4
            recurse(lo, mid - eps, sturm_count(ch, lo, mid - eps))
            out.append((mid, mid))
            recurse(mid + eps, hi, sturm_count(ch, mid + eps, hi))
            return
        nl = sturm_count(ch, lo, mid)
        recurse(lo, mid, nl)
        recurse(mid, hi, nroots - nl)

    recurse(-B, B, sturm_count(ch, -B, B))
    out.sort(key=lambda iv: iv[0])
    return out


# -- resultants -----------------------------------------------------------------


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant of two integer polynomials via Sylvester/Bareiss."""
    a, b = normalize(a), normalize(b)
    da, db = degree(a), degree(b)
    if da < 0 or db < 0:
        return 0
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    n = da + db
    ra = list(reversed(a))
    rb = list(reversed(b))
    rows: list[list[int]] = []
    for i in range(db):
        rows.append([0] * i + ra + [0] * (n - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + rb + [0] * (n - db - 1 - i))
    return _bareiss_det(rows)


def lagrange_interpolate(points: list[tuple[int, int]]) -> Coeffs:
    """Integer polynomial through integer points (must be integral)."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            nxt = [Fraction(0)] * (len(num) + 1)
            for k, c in enumerate(num):
                nxt[k] += c * (-xj)
                nxt[k + 1] += c
            num = nxt
            den *= xi - xj
        w = Fraction(yi) / den
        for k in range(len(num)):
            coeffs[k] += w * num[k]
    if any(c.denominator != 1 for c in coeffs):
        raise InvalidInputError("interpolation did not produce integers")
    return normalize(int(c) for c in coeffs)


def _subst_affine(q: Sequence[int], x0: int) -> Coeffs:
    """q(x0 - y) as a polynomial in y."""
    out: list[int] = [0]
    for c in reversed(normalize(q)):
        new = [0] * (len(out) + 1)
        for i, o in enumerate(out):
            new[i] += o * x0
            new[i + 1] -= o
        new[0] += c
        out = new
    return normalize(out)


def resultant_poly_sum(p: Sequence[int], q: Sequence[int]) -> Coeffs:
    """Integer polynomial vanishing on every alpha + beta (roots of p, q).

    Res_y(p(y), q(x - y)) computed by integer sampling + interpolation; the
    leading y-coefficient of q(x - y) is constant in x, so every sample has
    the same Sylvester dimensions.
    """
    p, q = normalize(p), normalize(q)
    target = degree(p) * degree(q)
    pts = []
    x0 = -(target // 2) - 1
    for _ in range(target + 1):
        x0 += 1
        pts.append((x0, resultant(p, _subst_affine(q, x0))))
    return normalize(lagrange_interpolate(pts))


def resultant_poly_prod(p: Sequence[int], q: Sequence[int]) -> Coeffs:
    """Integer polynomial vanishing on every alpha * beta.

    q must have a nonzero constant term (no zero roots).
    """
    p, q = normalize(p), normalize(q)
    if not q or q[0] == 0:
        raise InvalidInputError("product resultant needs nonzero roots in q")
    dp, dq = degree(p), degree(q)
    target = dp * dq
    pts = []
    x0 = 0
    for _ in range(target + 1):
        x0 += 1
        # Res_y(p(y), y^dq * q(x0/y)); coefficient of y^j is q[dq-j]*x0^(dq-j)
        qy = normalize(q[dq - j] * x0 ** (dq - j) for j in range(dq + 1))
        pts.append((x0, resultant(p, qy)))
    return normalize(lagrange_interpolate(pts))


def resultant_pair_sums(p: Sequence[int]) -> Coeffs:
    """Integer polynomial vanishing on every (alpha + beta)/2 over root
    pairs of p (including alpha = beta); locates real parts of complex
    conjugate pairs."""
    p = normalize(p)
    target = degree(p) ** 2
    pts = []
    x0 = -(target // 2) - 1
    for _ in range(target + 1):
        x0 += 1
        pts.append((x0, resultant(p, _subst_affine(p, 2 * x0))))
    return normalize(lagrange_interpolate(pts))


# -- rational roots and factorization over Q -------------------------------------


_DIVISOR_CAP = 10**10


def rational_roots(cs: Sequence[int]) -> list[Fraction]:
    """All rational roots (without multiplicity).

    Complete when |constant| and |leading| are below a divisor-enumeration
    cap; above it only the zero root is still detected (callers treat the
    search as an optimization in that regime).
    """
    cs = primitive(cs)
    if degree(cs) < 1:
        return []
    roots = []
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        cs = cs[k:]
    if degree(cs) >= 1 and abs(cs[0]) <= _DIVISOR_CAP and abs(cs[-1]) <= _DIVISOR_CAP:
        for pnum in _divisors(cs[0]):
            for pden in _divisors(cs[-1]):
                if math.gcd(pnum, pden) != 1:
                    continue
                for s in (1, -1):
                    r = Fraction(s * pnum, pden)
                    if eval_at(cs, r) == 0 and r not in roots:
                        roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _signed_divisors(n: int) -> list[int]:
    return [d for x in _divisors(n) for d in (x, -x)]


def factor_rational(cs: Sequence[int]) -> list[tuple[Coeffs, int]]:
    """Factor into irreducibles over Q: complete for degree <= 5.

    Higher degrees still get rational roots and quadratic-factor splits;
    any unsplit remainder is returned whole (squarefree but possibly
    reducible), which downstream code treats conservatively.
    """
    out: dict[Coeffs, int] = {}
    for sf, mult in squarefree_decomposition(cs):
        for f in _factor_squarefree(sf):
            out[f] = out.get(f, 0) + mult
    return sorted(out.items(), key=lambda t: (degree(t[0]), t[0]))


def _factor_squarefree(cs: Coeffs) -> list[Coeffs]:
    cs = primitive(cs)
    d = degree(cs)
    if d <= 1:
        return [cs] if d == 1 else []
    for r in rational_roots(cs):
        lin = primitive((-r.numerator, r.denominator))
        return [lin] + _factor_squarefree(div_exact_rational(cs, lin))
    if d in (2, 3):
        return [cs]
    if d == 4:
        split = _split_quartic(cs)
    elif d == 5:
        split = _split_quintic(cs)
    else:
        split = _split_generic_quadratic(cs)
    if split:
        a, b = split
        return _factor_squarefree(primitive(a)) + _factor_squarefree(primitive(b))
    return [cs]


def div_exact_rational(a: Coeffs, b: Coeffs) -> Coeffs:
    """Quotient a/b over Q, cleared to a primitive integer polynomial."""
    q, r = divmod_frac([Fraction(c) for c in a], [Fraction(c) for c in b])
    if r:
        raise InvalidInputError("inexact division")
    return primitive(from_fractions(q))


def _split_quartic(cs: Coeffs):
    """(a x^2 + b x + c)(d x^2 + e x + f) over Z, or None."""
    c0, c1, c2, c3, c4 = cs
    if abs(c0) > 10**8 or abs(c4) > 10**8:
        return None
    for a in _divisors(c4):
        if c4 % a:
            continue
        d = c4 // a
        for cc in _signed_divisors(c0):
            f = c0 // cc
            det = d * cc - a * f
            if det != 0:
                bn = c3 * cc - a * c1
                en = d * c1 - f * c3
                if bn % det or en % det:
                    continue
                b, e = bn // det, en // det
                if a * f + b * e + cc * d == c2:
                    return (cc, b, a), (f, e, d)
            else:
                # b*e = c2 - a*f - cc*d with a*e + b*d = c3: quadratic in b
                rhs = c2 - a * f - cc * d
                for b in _int_quadratic_roots(-d, c3, -a * rhs):
                    if (c3 - b * d) % a:
                        continue
                    e = (c3 - b * d) // a
                    if b * f + cc * e == c1 and b * e == rhs:
                        return (cc, b, a), (f, e, d)
    return None


def _split_quintic(cs: Coeffs):
    """(a x^2 + b x + c)(d x^3 + e x^2 + f x + g) over Z, or None."""
    c0, c1, c2, c3, c4, c5 = cs
    if abs(c0) > 10**8 or abs(c5) > 10**8:
        return None
    for a in _divisors(c5):
        if c5 % a:
            continue
        d = c5 // a
        for cc in _signed_divisors(c0):
            g = c0 // cc
            # e = (c4 - b d)/a,  f = (c1 - b g)/cc; x^3 coefficient gives a
            # quadratic in b:  -cc d b^2 + (cc c4 - a^2 g) b
            #                  + (a^2 c1 + a cc^2 d - a cc c3) = 0
            A = -cc * d
            B = cc * c4 - a * a * g
            C = a * a * c1 + a * cc * cc * d - a * cc * c3
            for b in _int_quadratic_roots(A, B, C):
                if (c4 - b * d) % a or (c1 - b * g) % cc:
                    continue
                e = (c4 - b * d) // a
                f = (c1 - b * g) // cc
                if a * g + b * f + cc * e == c2 and a * f + b * e + cc * d == c3:
                    return (cc, b, a), (g, f, e, d)
    return None


def _split_generic_quadratic(cs: Coeffs, height: int = 64):
    """Small-coefficient quadratic factor search for degree > 5."""
    if abs(cs[0]) > 10**6 or abs(cs[-1]) > 10**6:
        return None
    for a in _divisors(cs[-1]):
        for c in _signed_divisors(cs[0]):
            for b in range(-height, height + 1):
                quad = normalize((c, b, a))
                if degree(quad) != 2:
                    continue
                q, rem = divmod_frac(
                    [Fraction(x) for x in cs], [Fraction(x) for x in quad]
                )
                if not rem and all(f.denominator == 1 for f in q):
                    return quad, tuple(int(f) for f in q)
    return None


def _int_quadratic_roots(A: int, B: int, C: int) -> list[int]:
    """Integer roots of A b^2 + B b + C = 0."""
    if A == 0:
        if B == 0:
            return []
        return [-C // B] if C % B == 0 else []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for s in (r, -r):
        if (-B + s) % (2 * A) == 0:
            out.append((-B + s) // (2 * A))
    return sorted(set(out))
