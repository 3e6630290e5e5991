import math
import random
from fractions import Fraction as F

import pytest

from robustlrs.diophantine import (
    ContinuedFraction,
    Psi,
    cf_expand,
    construct_target,
    convergents,
    estimate_L,
    estimate_Linf,
    nearest_dist,
    nearest_dist_mod,
    ostrowski_expand,
    ostrowski_value,
    verify_target,
)
from robustlrs.scalars import InvalidInputError, QuadraticSurd as S, scalar_sign

GOLDEN = (S.sqrt_rational(5) - 1) / 2
SQRT2 = S.sqrt_rational(2)


def test_cf_golden_and_sqrt2():
    cf = cf_expand(GOLDEN, 12)
    assert cf.partial_quotients(12) == [0] + [1] * 11
    cf2 = cf_expand(SQRT2, 8)
    assert cf2.partial_quotients(8) == [1] + [2] * 7
    assert cf2.is_periodic


def test_cf_rational_terminates():
    cf = cf_expand(F(3, 7), 10)
    assert cf.terminated and cf.quotients == [0, 2, 3]


def test_convergents_seeds_and_values():
    cf = cf_expand(GOLDEN, 10)
    assert convergents(cf, 5) == [(0, 1), (1, 1), (1, 2), (2, 3), (3, 5)]
    cf2 = cf_expand(SQRT2, 10)
    assert convergents(cf2, 4) == [(1, 1), (3, 2), (7, 5), (17, 12)]


def test_theta_bound_and_growth():
    cf = cf_expand(GOLDEN, 35)
    phi_lo = F(1618, 1000)
    for k in range(1, 31):
        q = cf.convergent_at(k)[1]
        t = cf.abs_theta(k)
        assert scalar_sign(F(1, q) - t) > 0  # |theta_k| < 1/q_k
    for k in range(1, 31):
        q = cf.convergent_at(k)[1]
        assert F(q) >= (phi_lo ** (k - 1)) / 2  # phi^k growth (slack for rounding)


def test_nearest_dist_values():
    assert nearest_dist(F(27, 10)) == F(3, 10)
    assert nearest_dist(F(11, 2)) == F(1, 2)  # tie -> 1/2
    assert nearest_dist(SQRT2) == SQRT2 - 1


def test_nearest_dist_mod_two_pi():
    from robustlrs.angles import pi_enclosure

    def two_pi(width):
        lo, hi = pi_enclosure(F(width) / 2)
        return 2 * lo, 2 * hi

    out = nearest_dist_mod(F(79, 10), two_pi, precision=F(1, 10**9))
    assert abs(float(out.mid()) - (7.9 - 2 * math.pi)) < 1e-8


def test_estimators_golden_and_sqrt2():
    res = estimate_Linf(GOLDEN, 0, 100_000)
    assert abs(float(res.enclosure.lo) - 1 / math.sqrt(5)) < 0.01
    resL = estimate_L(GOLDEN, 0, 100_000)
    assert resL.enclosure.lo <= res.enclosure.hi  # inf <= liminf proxy
    res2 = estimate_Linf(SQRT2 - 1, 0, 100_000)
    assert abs(float(res2.enclosure.lo) - 1 / (2 * math.sqrt(2))) < 0.01


def test_estimator_records_monotone():
    res = estimate_Linf(GOLDEN, 0, 50_000)
    vals = [v for _, v in res.records]
    assert all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))


def test_ostrowski_basics():
    cf = ContinuedFraction.of(GOLDEN)
    theta0 = cf.abs_theta(0)
    exp = ostrowski_expand(theta0, cf, 10)
    assert exp.digits == [1] + [0] * 9
    exp0 = ostrowski_expand(F(0), cf, 10)
    assert exp0.digits == [0] * 10
    with pytest.raises(InvalidInputError):
        ostrowski_expand(F(3, 2), cf, 5)


def test_ostrowski_roundtrip_random():
    rng = random.Random(11)
    cf = ContinuedFraction.of(GOLDEN)
    for _ in range(40):
        y = F(rng.randint(0, 10**6), 10**6 + 1)
        exp = ostrowski_expand(y, cf, 30)
        assert exp.legal()
        val, tail = ostrowski_value(exp)
        diff = y - val
        mag = diff if scalar_sign(diff) >= 0 else -diff
        assert scalar_sign(tail - mag) >= 0


def test_ostrowski_uniqueness_spot_check():
    # streams differing in an early digit stay separated beyond both tails
    cf = ContinuedFraction.of(SQRT2 - 1)
    y1 = F(37, 100)
    exp1 = ostrowski_expand(y1, cf, 25)
    digits2 = list(exp1.digits)
    for i in range(4, 10):
        if digits2[i] == 0 and exp1.base.partial_quotients(i + 2)[i + 1] >= 1:
            digits2[i] = 1
            if i + 1 < len(digits2):
                digits2[i + 1] = 0
            break
    from robustlrs.diophantine import OstrowskiExpansion

    exp2 = OstrowskiExpansion(digits2, cf)
    if exp2.legal():
        v1, t1 = ostrowski_value(exp1)
        v2, t2 = ostrowski_value(exp2)
        gap = v1 - v2
        mag = gap if scalar_sign(gap) >= 0 else -gap
        assert scalar_sign(mag - (t1 + t2)) > 0


def test_quadratic_decay_inequality_samples():
    # 1 - cos(x) <= x^2 / 2 wherever the reduced distance is evaluated
    rng = random.Random(5)
    for _ in range(100):
        theta = rng.uniform(0.1, 3.0)
        phi = rng.uniform(0, 2 * math.pi)
        n = rng.randint(1, 10**4)
        x = n * theta - phi
        red = abs(x - 2 * math.pi * round(x / (2 * math.pi)))
        assert 1 - math.cos(x) <= red * red / 2 + 1e-9


def test_construct_target_even_and_odd():
    psi = Psi.inverse_power(2)
    for parity in ("even", "odd"):
        w = construct_target(SQRT2 - 1, psi, (F(3, 10), F(2, 5)), parity, count=8)
        assert len(w.indices) == 8
        want = 0 if parity == "even" else 1
        assert all(n % 2 == want for n in w.indices)
        assert F(3, 10) <= w.y_lo and w.y_hi <= F(2, 5)
        assert verify_target(SQRT2 - 1, w, psi)


def test_construct_target_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        construct_target(SQRT2 - 1, Psi.inverse_power(2), (F(2, 5), F(3, 10)), "even")
    with pytest.raises(Exception):
        Psi.geometric(1, 2)  # ratio >= 1 is not decreasing
