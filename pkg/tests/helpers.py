"""Shared constructions for decider tests.

The double-root order-4 family with eigenbasis-aligned balls: basis
q_n = [n, 1, Re gamma^n, Im gamma^n] with gamma = (3+4i)/5, V the 4x4
matrix of basis rows, S^{-1} = V diag(s^2) V^T.  Then the derived-table
coefficients reduce to p_i^2 - s_i^2 patterns, so every analysis case can
be dialed in directly from (p, s).
"""

from fractions import Fraction as F

from robustlrs import linalg
from robustlrs.neighbourhoods import Neighbourhood
from robustlrs.recurrences import LinearRecurrence, LrsInstance, _pow_complex
from robustlrs.scalars import as_exact

COS = F(3, 5)
SIN = F(4, 5)


def order4_recurrence(cos_theta=COS, rho_sq=F(1)) -> LinearRecurrence:
    """Recurrence with characteristic roots {1, 1, gamma, conj gamma},
    gamma = rho e^(i theta)."""
    # (X - 1)^2 (X^2 - 2 rho cos X + rho^2), all rational
    two_rc = 2 * cos_theta * _sqrt_exact(rho_sq)
    quad = [rho_sq, -two_rc, F(1)]
    sq = [F(1), F(-2), F(1)]
    cp = _polymul(sq, quad)
    return LinearRecurrence([-cp[i] for i in range(4)])


def _sqrt_exact(x: F) -> F:
    import math

    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    assert rn * rn == num and rd * rd == den, "test helper needs square rho^2"
    return F(rn, rd)


def _polymul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def basis_matrix(cos_theta=COS, sin_theta=SIN, rho=F(1)):
    """Rows q_n = [n, 1, Re gamma^n, Im gamma^n] for n = 0..3."""
    re, im = rho * cos_theta, rho * sin_theta
    V = []
    for n in range(4):
        re_n, im_n = _pow_complex(as_exact(re), as_exact(im), n)
        V.append([as_exact(n), as_exact(1), re_n, im_n])
    return V


def order4_instance(p, s, cos_theta=COS, sin_theta=SIN):
    """Instance + aligned neighbourhood from basis coefficients p and
    per-direction radii s (both length 4, rational)."""
    V = basis_matrix(cos_theta, sin_theta)
    init = linalg.mat_vec(V, [as_exact(x) for x in p])
    rec = order4_recurrence(cos_theta)
    diag = [[(as_exact(s[i]) ** 2 if i == j else as_exact(0)) for j in range(4)] for i in range(4)]
    S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
    S = linalg.inverse(S_inv)
    return LrsInstance(rec, init), Neighbourhood(S)


def case_c_instance(p, s_sq, alpha, cos_theta=COS, sin_theta=SIN):
    """Rotating-dominant instance {1, alpha, e^{+-i theta}} with an aligned
    ball: p = (z, w, x, y) center coefficients, s_sq = per-direction
    squared radii (rationals keep S rational even for irrational radii)."""
    a = F(alpha)
    V = []
    for n in range(4):
        re_n, im_n = _pow_complex(as_exact(cos_theta), as_exact(sin_theta), n)
        V.append([as_exact(1), as_exact(a**n), re_n, im_n])
    init = linalg.mat_vec(V, [as_exact(x) for x in p])
    cp = _polymul(_polymul([F(-1), F(1)], [-a, F(1)]), [F(1), -2 * F(cos_theta), F(1)])
    assert cp[4] == 1
    rec = LinearRecurrence([-cp[i] for i in range(4)])
    diag = [[(as_exact(s_sq[i]) if i == j else as_exact(0)) for j in range(4)] for i in range(4)]
    S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
    S = linalg.inverse(S_inv)
    return LrsInstance(rec, init), Neighbourhood(S)
