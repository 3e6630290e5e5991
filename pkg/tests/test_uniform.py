"""Robust positivity / uniform ultimate positivity deciders."""

import random
from fractions import Fraction as F

import pytest

from helpers import COS, SIN, order4_instance, order4_recurrence
from robustlrs.certificates import NO, UNSUPPORTED, YES
from robustlrs.neighbourhoods import validate
from robustlrs.recurrences import LinearRecurrence, LrsInstance
from robustlrs.uniform import (
    analyze_ultimate,
    compute_N2_g_positive,
    compute_N2_mu_positive,
    decide_robust_positivity,
    decide_robust_uniform_ultimate,
    detect_infinite_violations_g_negative,
    order4_analyze,
    order4_coefficients,
    violation_witness,
)
from robustlrs.neighbourhoods import derived_sequence


def unit_ball(n):
    return validate([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def scaled_ball(n, s):
    return validate([[s if i == j else 0 for j in range(n)] for i in range(n)])


def test_fibonacci_zero_start_is_no_at_zero():
    inst = LrsInstance(LinearRecurrence([1, 1]), [0, 1])
    out = decide_robust_positivity(inst, unit_ball(2))
    assert out.decision == NO and out.witness.n == 0
    # witness verifies exactly
    val = LrsInstance(inst.recurrence, out.witness.c_prime).evaluate(out.witness.n)
    from robustlrs.scalars import scalar_sign

    assert scalar_sign(val) < 0


def test_fibonacci_comfortable_ball_is_yes():
    inst = LrsInstance(LinearRecurrence([1, 1]), [3, 5])
    out = decide_robust_positivity(inst, scaled_ball(2, 100))
    assert out.decision == YES
    assert out.N is not None and out.prefix_checked == out.N


def test_order1_halving():
    inst = LrsInstance(LinearRecurrence([F(1, 2)]), [1])
    out = decide_robust_positivity(inst, validate([[4]]))
    assert out.decision == YES


def test_pair_only_spectrum_is_no():
    # characteristic roots 2 e^{+-i theta} only: no positive real dominant
    inst = LrsInstance(LinearRecurrence([-4, F(6, 5)]), [1, 1])
    out = decide_robust_uniform_ultimate(inst, unit_ball(2))
    assert out.decision == NO


def test_growth_separation_yes_for_every_radius():
    # u_n = 3^n - 2^n with the ball squeezed onto the slow eigendirection
    from robustlrs import linalg

    V = [[F(1), F(1)], [F(3), F(2)]]  # columns: 3^n and 2^n initialisations
    rec = LinearRecurrence([-6, 5])
    inst = LrsInstance(rec, [0, 1])  # 3^n - 2^n... init (0,1): u_n = 3^n - 2^n? u0=0,u1=1
    for r in (F(1), F(10), F(100)):
        eps = F(1, 1000)
        diag = [[eps * eps, F(0)], [F(0), r * r]]
        S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
        nb = validate(linalg.inverse(S_inv))
        out = decide_robust_uniform_ultimate(inst, nb)
        assert out.decision == YES, (r, out.reason)
        assert out.N is not None


def test_order4_generic_yes():
    inst, nb = order4_instance(
        p=[F(1), F(10), F(1), F(0)], s=[F(1, 2), F(1), F(1, 4), F(1, 4)]
    )
    out = decide_robust_positivity(inst, nb)
    assert out.decision == YES


def test_order4_mu_positive_case():
    # z2 = 0 via s1 = p1; liminf positive via p2 > |(p3, p4)|
    inst, nb = order4_instance(
        p=[F(1), F(6), F(3, 2), F(2)], s=[F(1), F(1, 2), F(1, 2), F(1, 2)]
    )
    coeffs, label = order4_analyze(inst, nb)
    assert label == "mu_pos"
    n2 = compute_N2_mu_positive(coeffs)
    v = derived_sequence(inst, nb)
    from robustlrs.scalars import scalar_sign

    for n in range(n2 + 1, min(10 * n2, 400)):
        assert scalar_sign(v.evaluate(n)) >= 0
    out = decide_robust_positivity(inst, nb)
    assert out.decision in (YES, NO)  # decided either way, never unsupported


def test_order4_mu_negative_case():
    inst, nb = order4_instance(
        p=[F(1), F(1), F(3), F(4)], s=[F(1), F(1, 2), F(1, 2), F(1, 2)]
    )
    coeffs, label = order4_analyze(inst, nb)
    assert label == "mu_neg"
    out = decide_robust_uniform_ultimate(inst, nb)
    assert out.decision == NO
    # witness verifies
    from robustlrs.scalars import scalar_sign

    val = LrsInstance(inst.recurrence, out.witness.c_prime).evaluate(out.witness.n)
    assert scalar_sign(val) < 0


def test_order4_mu_zero_from_ball_is_g_negative():
    # For a true ball-derived table, z2 = mu = 0 forces g(phase) < 0: the
    # Cauchy-Schwarz step of the impossibility argument is strict, and its
    # direction pins the sign.
    t = F(1, 4)
    inst, nb = order4_instance(
        p=[F(1), 5 * t, 3 * t, 4 * t], s=[F(1), F(1, 8), F(1, 8), F(1, 8)]
    )
    coeffs, label = order4_analyze(inst, nb)
    assert label == "mu_zero_g_neg"


def test_order4_g_positive_threshold_on_raw_table():
    # g(phase) > 0 cannot arise from a positive definite ball, but the
    # threshold computation itself is exercised on a raw coefficient table:
    # f(t) = 1 - cos t, g(t) = 1/4 + cos t / 2.
    from robustlrs.uniform import Order4Coefficients

    coeffs = Order4Coefficients(
        z2=F(0),
        z1=F(1),
        z0=F(1, 4),
        x2=F(-1),
        y2=F(0),
        x1=F(1, 2),
        y1=F(0),
        w=F(0),
        x0=F(0),
        y0=F(0),
        rho_sq=F(1),
        gamma=(COS, SIN),
        p=[F(0)] * 4,
    )
    assert coeffs.case_label() == "mu_zero_g_pos"
    n2 = compute_N2_g_positive(coeffs)
    assert n2 >= 1
    # exhaustive exact validation of n f(n theta) + g(n theta) >= 0 beyond n2
    c_n, s_n = F(1), F(0)
    for n in range(0, 10 * n2 + 10):
        if n > n2:
            f_val = coeffs.z1 + coeffs.x2 * c_n + coeffs.y2 * s_n
            g_val = (
                coeffs.z0
                + coeffs.w
                + coeffs.x1 * c_n
                + coeffs.y1 * s_n
                + coeffs.x0 * (2 * c_n * c_n - 1)
                + coeffs.y0 * (2 * s_n * c_n)
            )
            assert n * f_val + g_val >= 0
        c_n, s_n = c_n * COS - s_n * SIN, c_n * SIN + s_n * COS


def test_order4_mu_zero_g_negative():
    # same liminf-zero alignment but a fatter ball drives g(phase) < 0
    t = F(1, 4)
    inst, nb = order4_instance(
        p=[F(1), 5 * t, 3 * t, 4 * t], s=[F(1), F(2), F(1, 8), F(1, 8)]
    )
    coeffs, label = order4_analyze(inst, nb)
    assert label == "mu_zero_g_neg"
    v = derived_sequence(inst, nb)
    hits = detect_infinite_violations_g_negative(coeffs, v)
    assert len(hits) >= 3
    from robustlrs.scalars import scalar_sign

    for n in hits:
        assert scalar_sign(v.evaluate(n)) < 0
    out = decide_robust_uniform_ultimate(inst, nb)
    assert out.decision == NO


def test_order4_rho_lt_1_routes_generically():
    # rho = 1/2 pair: decaying oscillation under a double unit root; the
    # linear coefficient must strictly clear its radius for a YES
    from robustlrs import linalg
    from robustlrs.neighbourhoods import Neighbourhood
    from robustlrs.recurrences import _pow_complex
    from robustlrs.scalars import as_exact

    re, im = F(3, 10), F(2, 5)  # rho^2 = 1/4
    V = []
    for n in range(4):
        re_n, im_n = _pow_complex(as_exact(re), as_exact(im), n)
        V.append([as_exact(n), as_exact(1), re_n, im_n])
    cp = _charpoly_from_factors([F(1), F(1)], (re, im))
    rec = LinearRecurrence([-c for c in cp[:4]])
    init = linalg.mat_vec(V, [F(1), F(2), F(1), F(0)])
    inst = LrsInstance(rec, init)
    diag = [[(F(1, 100) if i == j else F(0)) for j in range(4)] for i in range(4)]
    S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
    nb = Neighbourhood(linalg.inverse(S_inv))
    out = decide_robust_positivity(inst, nb)
    assert out.decision == YES
    # zeroing the growth coefficient flips it: the ball reaches negatives
    init0 = linalg.mat_vec(V, [F(0), F(2), F(1), F(0)])
    out0 = decide_robust_positivity(LrsInstance(rec, init0), nb)
    assert out0.decision == NO


def _charpoly_from_factors(real_roots, pair):
    re, im = pair
    quad = [re * re + im * im, -2 * re, F(1)]
    cp = [F(1)]
    for r in real_roots:
        cp = _polymul(cp, [-r, F(1)])
    return _polymul(cp, quad)


def _polymul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_impossibility_of_joint_zero_small():
    # z2 = mu = 0 can never make g(phase) vanish as well: the case label
    # always resolves (here, to the g-negative branch)
    t = F(1, 3)
    inst, nb = order4_instance(
        p=[F(2), 5 * t, 3 * t, 4 * t], s=[F(2), F(1, 8), F(1, 8), F(1, 8)]
    )
    coeffs, label = order4_analyze(inst, nb)
    assert label == "mu_zero_g_neg"


def test_implication_positivity_implies_uniform():
    rng = random.Random(42)
    agree = 0
    for _ in range(25):
        p = [F(rng.randint(0, 4)), F(rng.randint(1, 6)), F(rng.randint(-3, 3)), F(rng.randint(-3, 3))]
        s = [F(1, rng.randint(2, 8)) for _ in range(4)]
        inst, nb = order4_instance(p=p, s=s)
        pos = decide_robust_positivity(inst, nb)
        if pos.decision == YES:
            uu = decide_robust_uniform_ultimate(inst, nb)
            assert uu.decision == YES
            agree += 1
    assert agree >= 3  # the family genuinely produces YES instances


def test_ball_monotonicity_yes_preserved_under_shrinking():
    inst = LrsInstance(LinearRecurrence([1, 1]), [3, 5])
    base = scaled_ball(2, 100)
    assert decide_robust_positivity(inst, base).decision == YES
    for lam in (2, 10):
        assert decide_robust_positivity(inst, base.scale(lam)).decision == YES


def test_unsupported_is_honest():
    # order 6 with five dominant pairs: outside every supported envelope
    # (simple spectrum, non-surd): expect UNSUPPORTED rather than a guess
    cp = [F(2), F(0), F(0), F(0), F(0), F(0), F(1)]  # X^6 + 2: no real root... a0 = -2
    rec = LinearRecurrence([-c for c in cp[:6]])
    inst = LrsInstance(rec, [1, 1, 1, 1, 1, 1])
    out = decide_robust_uniform_ultimate(inst, unit_ball(6))
    assert out.decision in (NO, UNSUPPORTED)
