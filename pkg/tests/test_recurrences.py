import random
from fractions import Fraction as F

import pytest

from robustlrs.recurrences import (
    DominantPart,
    LinearRecurrence,
    LrsInstance,
    closed_form,
    companion,
    degeneracy_order,
    degenerate_decompose,
    dominant_part,
    fibonacci,
    liminf_dominant,
    lrs_product,
    lrs_sum,
    minimal_recurrence,
)
from robustlrs.scalars import InvalidInputError, QuadraticSurd as S, UnsupportedProblemError


def test_companion_shapes():
    assert companion(LinearRecurrence([1, 1])) == [[0, 1], [1, 1]]
    assert companion(LinearRecurrence([2])) == [[2]]
    A = companion(LinearRecurrence([-1, 0, 2]))
    assert A[0] == [0, 1, 0] and A[1] == [0, 0, 1] and A[2] == [-1, 0, 2]


def test_zero_leading_coefficient_rejected():
    with pytest.raises(InvalidInputError):
        LinearRecurrence([0, 1])


def test_evaluate_fibonacci():
    fib = fibonacci()
    assert [fib.evaluate(n) for n in range(7)] == [0, 1, 1, 2, 3, 5, 8]
    assert fib.evaluate(0) == 0
    # matrix-power path agrees
    assert fib.evaluate_pow(30) == fib.evaluate(30) == 832040


def test_evaluate_linear_growth():
    lin = LrsInstance(LinearRecurrence([-1, 2]), [0, 1])  # u_n = n
    assert lin.evaluate(5) == 5


def test_closed_form_fibonacci():
    cf = closed_form(fibonacci())
    roots = sorted(cf.real_terms, key=lambda t: float(t.root))
    assert roots[1].root == (1 + S.sqrt_rational(5)) / 2
    inv5 = S.sqrt_rational(5).inverse()
    assert roots[1].coeffs[0] == inv5
    assert roots[0].coeffs[0] == -inv5


def test_closed_form_double_root():
    inst = LrsInstance(LinearRecurrence([-1, 2]), [1, 1])  # constant 1
    cf = closed_form(inst)
    (t,) = cf.real_terms
    assert t.root == 1 and t.mult == 2
    assert t.coeffs == [1, 0]


def test_closed_form_reevaluates_exactly():
    rng = random.Random(7)
    for _ in range(12):
        order = rng.randint(1, 3)
        # random rational factors keep roots in the tower
        roots = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(order)]
        if any(r == 0 for r in roots):
            continue
        cp = [F(1)]
        for r in roots:
            # multiply by (X - r): newc[i] = c[i-1] - r c[i]
            cp = [
                (cp[i - 1] if i >= 1 else F(0)) - r * (cp[i] if i < len(cp) else F(0))
                for i in range(len(cp) + 1)
            ]
        a = [-cp[i] for i in range(order)]
        inst = LrsInstance(LinearRecurrence(a), [rng.randint(-5, 5) for _ in range(order)])
        cf = closed_form(inst)
        for n in range(0, 40):
            assert (cf.evaluate(n) - inst.evaluate(n)) == 0


def test_dominant_examples():
    # u_n = 2^n + cos-basis instance: roots {2} and pair i
    rec = LinearRecurrence([2, -1, 2])  # (X-2)(X^2+1)
    inst = LrsInstance(rec, [2, 2, 3])
    dp = dominant_part(closed_form(inst))
    assert dp is not None and dp.modulus_sq == 4 and dp.level == 0
    assert dp.z == 1 and dp.pairs == []
    # pair-only dominance: (X^2 - (6/5)X + 4): no real positive dominant
    rec2 = LinearRecurrence([-4, F(6, 5)])
    dp2 = dominant_part(closed_form(LrsInstance(rec2, [1, 1])))
    assert dp2 is None


def test_liminf_examples():
    dp = DominantPart(F(1), 0, F(5), F(1), [(F(3), F(4), F(3, 5), F(4, 5))])
    assert liminf_dominant(dp).compare(-1) == 0
    dp2 = DominantPart(F(1), 0, F(1), F(0), [])
    assert liminf_dominant(dp2).compare(1) == 0


def test_liminf_phase_invariance():
    # rotating (x, y) by any exact phase leaves the liminf unchanged
    c, s = F(3, 5), F(4, 5)
    x, y = F(2), F(-1)
    xr, yr = x * c + y * s, -x * s + y * c
    base = DominantPart(F(1), 0, F(7, 2), F(0), [(x, y, F(3, 5), F(4, 5))])
    rot = DominantPart(F(1), 0, F(7, 2), F(0), [(xr, yr, F(3, 5), F(4, 5))])
    assert liminf_dominant(base).compare(liminf_dominant(rot)) == 0


def test_liminf_rejects_rational_angle():
    dp = DominantPart(F(1), 0, F(1), F(0), [(F(1), F(0), F(0), F(1))])
    with pytest.raises(InvalidInputError):
        liminf_dominant(dp)


def test_sum_and_product():
    fib = fibonacci()
    s = lrs_sum(fib, fib)
    assert all(s.evaluate(n) == 2 * fib.evaluate(n) for n in range(50))
    p = lrs_product(fib, fib)
    assert p.order <= 4
    assert all(p.evaluate(n) == fib.evaluate(n) ** 2 for n in range(50))
    g = lrs_product(
        LrsInstance(LinearRecurrence([2]), [1]), LrsInstance(LinearRecurrence([3]), [1])
    )
    assert g.recurrence.coeffs == [6] and g.evaluate(5) == 6**5


def test_product_root_set_containment():
    # roots of fib^2 are pairwise products of fib roots
    from robustlrs.recurrences import instance_spectrum

    p = lrs_product(fibonacci(), fibonacci())
    spec = instance_spectrum(p)
    golden = (1 + S.sqrt_rational(5)) / 2
    conj = (1 - S.sqrt_rational(5)) / 2
    expected = {golden * golden, conj * conj, golden * conj}
    for root, _ in spec["real"]:
        assert any((S.of(root) - e).sign() == 0 for e in expected)


def test_minimal_recurrence_reduces_order():
    # terms of 2^n presented as if order-3 data
    terms = [F(2) ** n for n in range(10)]
    inst = minimal_recurrence(terms, 3)
    assert inst.order == 1 and inst.recurrence.coeffs == [2]


def test_degenerate_decompose_quarter_turn():
    rec = LinearRecurrence([1, -1, 1])  # roots {1, i, -i}
    inst = LrsInstance(rec, [2, 1, 0])  # 1 + cos(n pi/2)
    assert degeneracy_order(inst) == 4
    subs = degenerate_decompose(inst, 4)
    assert len(subs) == 8
    for j, sub in enumerate(subs):
        for m in range(10):
            assert sub.evaluate(m) == inst.evaluate(8 * m + j)


def test_degenerate_decompose_sign_flip():
    inst = LrsInstance(LinearRecurrence([1, 0]), [3, 5])  # roots {1, -1}
    assert degeneracy_order(inst) == 2
    subs = degenerate_decompose(inst, 2)
    assert all(sub.order == 1 for sub in subs)
    for j, sub in enumerate(subs):
        assert all(sub.evaluate(m) == inst.evaluate(4 * m + j) for m in range(8))


def test_degenerate_decompose_rejects_mismatch():
    with pytest.raises(InvalidInputError):
        degenerate_decompose(fibonacci(), 2)
