"""Non-uniform ultimate positivity: halfspace cases, cone tangency."""

from fractions import Fraction as F

import pytest

from helpers import case_c_instance, order4_instance
from robustlrs.certificates import NO, UNSUPPORTED, YES
from robustlrs.neighbourhoods import validate
from robustlrs.nonuniform import (
    classify_dominant_form,
    decide_nonuniform,
    tangency_set,
)
from robustlrs.recurrences import LinearRecurrence, LrsInstance
from robustlrs.scalars import scalar_sign


def ball(n, scale):
    return validate([[scale if i == j else 0 for j in range(n)] for i in range(n)])


def test_classify_cases():
    # (a): single root 1 with decaying spectrum
    rec_a = LinearRecurrence([F(-1, 2), F(3, 2)])  # roots 1, 1/2
    case = classify_dominant_form(LrsInstance(rec_a, [1, 1]))
    assert case.label == "a"
    # (b): roots {1, -1}
    rec_b = LinearRecurrence([1, 0])
    case_b = classify_dominant_form(LrsInstance(rec_b, [2, 1]))
    assert case_b.label == "b"
    # (c) with a decaying term
    inst, _ = case_c_instance([1, 1, 0, 0], [1, 1, 1, 1], F(1, 2))
    case_c = classify_dominant_form(inst)
    assert case_c.label == "c" and case_c.angle_order is None
    assert scalar_sign(case_c.alpha - F(1, 2)) == 0
    # (d): {1, -1, pair}
    from helpers import _polymul

    cp = _polymul(_polymul([F(-1), F(1)], [F(1), F(1)]), [F(1), F(-6, 5), F(1)])
    rec_d = LinearRecurrence([-cp[i] for i in range(4)])
    case_d = classify_dominant_form(LrsInstance(rec_d, [4, 1, 1, 1]))
    assert case_d.label == "d"


def test_case_a_interior_yes_and_crossing_no():
    rec = LinearRecurrence([F(-1, 2), F(3, 2)])  # u_n = z + w (1/2)^n
    inst = LrsInstance(rec, [3, 2])  # z = 1, w = 2
    out = decide_nonuniform(inst, ball(2, 100))
    assert out.decision == YES
    out2 = decide_nonuniform(inst, ball(2, F(1, 100)))  # radius 10 ball
    assert out2.decision == NO
    # witness point is in the ball and has a verified negative term
    w = out2.witness
    val = LrsInstance(rec, w.c_prime).evaluate(w.n)
    assert scalar_sign(val) < 0


def test_case_b_alternating():
    rec = LinearRecurrence([1, 0])  # roots {1, -1}: u_n = z + w(-1)^n
    inst = LrsInstance(rec, [3, 1])  # z = 2, w = 1
    assert decide_nonuniform(inst, ball(2, 100)).decision == YES
    out = decide_nonuniform(inst, ball(2, F(1, 4))).decision
    assert out == NO


def test_case_d_necessary_sufficient():
    from helpers import _polymul

    cp = _polymul(_polymul([F(-1), F(1)], [F(1), F(1)]), [F(1), F(-6, 5), F(1)])
    rec = LinearRecurrence([-cp[i] for i in range(4)])
    # center with large constant part: mu comfortably positive
    inst = LrsInstance(rec, [10, 10, 10, 10])
    assert decide_nonuniform(inst, ball(4, 10000)).decision == YES
    # huge ball: mu negative somewhere
    assert decide_nonuniform(inst, ball(4, F(1, 10000))).decision == NO


def test_case_c_strictly_inside_yes():
    inst, nb = case_c_instance(
        [F(1), F(1, 5), F(1, 10), F(0)],
        [F(1, 100), F(1, 100), F(1, 100), F(1, 100)],
        F(1, 2),
    )
    out = decide_nonuniform(inst, nb)
    assert out.decision == YES


def test_case_c_crossing_no():
    inst, nb = case_c_instance(
        [F(1), F(0), F(2), F(0)],
        [F(1, 4), F(1, 4), F(1, 4), F(1, 4)],
        F(1, 2),
    )
    out = decide_nonuniform(inst, nb)
    assert out.decision == NO


def test_single_point_tangency_classified():
    # ball tangent to the cone along exactly one generator: center
    # (1, w0, a(-3/5), a(4/5)) with isotropic (z, x, y) radius (1-a)/sqrt2
    a = F(1, 2)
    r_sq = (1 - a) ** 2 / 2
    inst, nb = case_c_instance(
        [F(1), F(-1, 10), a * F(-3, 5), a * F(4, 5)],
        [r_sq, F(1, 64), r_sq, r_sq],
        F(1, 2),  # positive decaying root: threat needs w' < 0
    )
    case = classify_dominant_form(inst)
    tset = tangency_set(case, inst, nb)
    assert len(tset.intervals) == 1
    iv = tset.intervals[0]
    assert iv.single_point
    # the contact direction is cos(phi0) = 3/5
    assert iv.lo.compare(F(3, 5)) == 0


def test_single_point_tangency_unthreatened_is_yes():
    a = F(1, 2)
    r_sq = (1 - a) ** 2 / 2
    inst, nb = case_c_instance(
        [F(1), F(1, 10), a * F(-3, 5), a * F(4, 5)],
        [r_sq, F(1, 64), r_sq, r_sq],
        F(1, 2),  # w' > 0 with alpha > 0: no threatening decay term
    )
    out = decide_nonuniform(inst, nb)
    assert out.decision == YES


def test_nestled_positive_length_no_with_corroboration():
    # ball centred on the cone axis, inscribed: contact along the whole
    # circle of generators; negative decaying root makes every touch
    # threatening, so the decision is NO
    inst, nb = case_c_instance(
        [F(1), F(200), F(0), F(0)],
        [F(1, 2), F(1, 16), F(1, 2), F(1, 2)],
        F(-1, 2),
    )
    case = classify_dominant_form(inst)
    tset = tangency_set(case, inst, nb)
    assert tset.has_positive_length
    out = decide_nonuniform(inst, nb)
    assert out.decision == NO
    # corroboration: at least 3 exact negative terms at the witness point
    negs = [out.witness.n] + list(out.extra_violations)
    assert len(set(negs)) >= 3
    point = out.witness.c_prime
    sub = LrsInstance(inst.recurrence, point)
    for n in set(negs):
        assert scalar_sign(sub.evaluate(n)) < 0
    # the witness point touches the ball boundary exactly
    assert scalar_sign(nb.boundary_distance_sq(inst.init, point) - 1) == 0


def test_prop1_no_positive_dominant_is_no():
    # dominant pair only: {2 e^{+-i theta}} at order 2
    rec = LinearRecurrence([-4, F(6, 5)])
    out = decide_nonuniform(LrsInstance(rec, [1, 1]), ball(2, 1))
    assert out.decision == NO


def test_order_above_four_unsupported():
    rec = LinearRecurrence([1, 0, 0, 0, 1])
    out = decide_nonuniform(LrsInstance(rec, [1, 1, 1, 1, 1]), ball(5, 1))
    assert out.decision == UNSUPPORTED
