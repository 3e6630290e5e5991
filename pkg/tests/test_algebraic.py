from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustlrs import intpoly as ip
from robustlrs.algebraic import (
    AlgebraicReal as A,
    compare,
    is_root_of_unity,
    isolate_real_roots,
    refine,
)
from robustlrs.scalars import InvalidInputError, QuadraticSurd as S


def sqrt2():
    return A.of(S.sqrt_rational(2))


def test_isolate_sqrt2():
    rd = isolate_real_roots((-2, 0, 1))
    vals = [float(r) for r, _ in rd.real]
    assert len(vals) == 2 and abs(vals[0] + 1.41421356) < 1e-6
    lo, hi = rd.real[1][0].isolating_interval
    assert lo <= F(1414213563, 10**9) <= hi or lo <= F(3, 2)


def test_isolate_pure_imaginary():
    rd = isolate_real_roots((1, 0, 1))
    assert rd.real == []
    (re, im, mult) = rd.complex_pairs[0]
    assert re.compare(0) == 0 and im.compare(1) == 0 and mult == 1


def test_isolate_hardness_charpoly():
    # (x-1)^3 (5x^2 - 6x + 5): triple root 1, pair with real part 3/5
    p = (1,)
    for f in [(-1, 1)] * 3 + [(5, -6, 5)]:
        p = ip.mul(p, f)
    rd = isolate_real_roots(p)
    assert [(float(r), m) for r, m in rd.real] == [(1.0, 3)]
    re, im, mult = rd.complex_pairs[0]
    assert re.compare(F(3, 5)) == 0
    assert im.compare(F(4, 5)) == 0


def test_isolate_rejects_zero_poly():
    with pytest.raises(InvalidInputError):
        isolate_real_roots(())


def test_compare_examples():
    assert compare(S.sqrt_rational(2), F(3, 2)) == -1
    rd1 = isolate_real_roots((-2, 0, 1)).real[1][0]
    rd2 = isolate_real_roots((-4, 0, 0, 0, 1)).real[1][0]  # x^4 = 4, root sqrt2
    assert rd1.compare(rd2) == 0
    inv = A.of(S.sqrt_rational(5)).inverse()
    assert inv.compare(F(4472, 10000)) == 1  # 1/sqrt5 = 0.44721...


def test_refine_width_and_content():
    root = isolate_real_roots((-2, 0, 0, 1)).real[0][0]  # cbrt(2)
    lo, hi = refine(root, F(1, 10**6))
    assert hi - lo <= F(1, 10**6)
    assert lo <= F(1259921, 10**6) <= hi


def test_refine_rational_degenerate():
    five_thirds = A.from_rational(F(5, 3))
    assert refine(five_thirds, F(1, 100)) == (F(5, 3), F(5, 3))


def test_arithmetic_identities():
    r2, r3 = sqrt2(), A.of(S.sqrt_rational(3))
    s = r2 + r3
    assert s.min_poly == (1, 0, -10, 0, 1)
    assert (s * s).compare(5 + 2 * S.sqrt_rational(6)) == 0
    assert (r2 * r2).compare(2) == 0
    assert (r2 / r2).compare(1) == 0
    assert (-r2).compare(r2.mul_rational(-1)) == 0


def test_sqrt_and_floor():
    v = A.from_rational(F(49, 4)).sqrt()
    assert v.compare(F(7, 2)) == 0
    assert sqrt2().floor() == 1
    assert (-sqrt2()).floor() == -2
    assert A.from_rational(3).floor() == 3
    golden = A.of((S.sqrt_rational(5) - 1) / 2)
    assert (golden + golden).floor() == 1


def test_root_of_unity_examples():
    assert is_root_of_unity(0, 1) == 4
    assert is_root_of_unity(S(F(-1, 2)), S(0, F(1, 2), 3)) == 3
    assert is_root_of_unity(F(3, 5), F(4, 5)) is None
    assert is_root_of_unity(1, 0) == 1
    assert is_root_of_unity(-1, 0) == 2


def test_root_of_unity_rejects_off_circle():
    with pytest.raises(InvalidInputError):
        is_root_of_unity(F(1, 2), F(1, 2))


def test_interval_newton_invariant():
    # sign change across every refined isolating interval
    for poly in [(-2, 0, 1), (-1, -1, 0, 1), (1, 1, 0, 0, 1)]:
        rd = isolate_real_roots(poly)
        for root, _ in rd.real:
            if root.is_rational:
                assert ip.eval_at(poly, root.lo) == 0
                continue
            lo, hi = root.refine_to(F(1, 10**9))
            f = root.poly
            assert ip.sign_at(f, lo) * ip.sign_at(f, hi) < 0


@settings(max_examples=60, deadline=None)
@given(
    p=st.fractions(min_value=-20, max_value=20, max_denominator=7),
    q=st.fractions(min_value=-20, max_value=20, max_denominator=7),
    d=st.sampled_from([2, 3, 5]),
)
def test_surd_vs_algebraic_agreement(p, q, d):
    s = S(p, q, d)
    a = A.of(s)
    t = S(q, p, d)
    assert (a + A.of(t)).compare(s + t) == 0
    assert (a * A.of(t)).compare(s * t) == 0


def test_compare_total_order_consistency():
    vals = [
        A.from_rational(F(7, 5)),
        sqrt2(),
        A.from_rational(F(3, 2)),
        A.of(S.sqrt_rational(3)),
    ]
    for i in range(len(vals)):
        for j in range(len(vals)):
            cij = vals[i].compare(vals[j])
            assert cij == -vals[j].compare(vals[i])
            fi, fj = float(vals[i]), float(vals[j])
            if abs(fi - fj) > 1e-9:
                assert cij == (1 if fi > fj else -1)
