import random
from fractions import Fraction as F

import pytest

from robustlrs import linalg
from robustlrs.neighbourhoods import (
    Neighbourhood,
    derived_sequence,
    prefix_check,
    row_functionals,
    validate,
)
from robustlrs.recurrences import LinearRecurrence, LrsInstance, companion, fibonacci
from robustlrs.scalars import InvalidInputError


def test_validate_identity():
    nb = validate([[1, 0], [0, 1]])
    assert nb.D == [1, 1]


def test_validate_exact_inverse_and_pivots():
    nb = validate([[2, 1], [1, 2]])
    assert nb.D == [2, F(3, 2)]
    assert nb.S_inv == [[F(2, 3), F(-1, 3)], [F(-1, 3), F(2, 3)]]
    # S * S_inv = I exactly
    assert linalg.mat_mul(nb.S, nb.S_inv) == linalg.identity(2)


def test_validate_rejections():
    with pytest.raises(InvalidInputError, match="minor 2"):
        validate([[1, 2], [2, 1]])
    with pytest.raises(InvalidInputError, match="symmetric"):
        validate([[1, 2], [0, 1]])


def test_ball_max_examples():
    nb = validate([[1, 0], [0, 1]])
    assert nb.ball_max([1, 0]).compare(1) == 0
    nb2 = validate([[4, 0], [0, 4]])
    assert nb2.ball_max([3, 4]).compare(F(5, 2)) == 0
    assert nb2.ball_max([0, 0]).compare(0) == 0


def test_ball_max_square_identity():
    rng = random.Random(3)
    for _ in range(20):
        S = _random_pd(rng, 3)
        nb = validate(S)
        h = [F(rng.randint(-5, 5)) for _ in range(3)]
        v = nb.ball_max_sq(h)
        expect = linalg.vec_dot(h, linalg.mat_vec(nb.S_inv, h))
        assert v == expect


def test_ball_max_is_support_maximum():
    # sampled points of the ball never beat the closed form
    rng = random.Random(11)
    nb = validate([[3, 1], [1, 2]])
    h = [F(2), F(-1)]
    best = float(nb.ball_max(h))
    seen = 0.0
    for _ in range(4000):
        d = [F(rng.randint(-1000, 1000), 1000) for _ in range(2)]
        q = linalg.vec_dot(d, linalg.mat_vec(nb.S, d))
        if q > 1 or q == 0:
            continue
        # push to the boundary with a float scale (sample only)
        scale = float(q) ** -0.5
        val = float(linalg.vec_dot(h, d)) * scale
        seen = max(seen, val)
    assert seen <= best + 1e-9
    assert best - seen < 2e-2


def test_derived_sequence_order1():
    inst = LrsInstance(LinearRecurrence([2]), [3])
    v = derived_sequence(inst, validate([[1]]))
    assert v.sequence(5) == [8 * 4**n for n in range(5)]


def test_derived_sequence_matches_definition():
    fib = LrsInstance(LinearRecurrence([1, 1]), [1, 2])
    nb = validate([[100, 0], [0, 100]])
    v = derived_sequence(fib, nb)
    rows = row_functionals(fib, 100)
    for n, h in enumerate(rows):
        un = linalg.vec_dot(h, fib.init)
        assert v.evaluate(n) == un * un - nb.ball_max_sq(h)


def test_derived_monotone_in_scale():
    fib = LrsInstance(LinearRecurrence([1, 1]), [1, 2])
    small = derived_sequence(fib, validate([[100, 0], [0, 100]]))
    large = derived_sequence(fib, validate([[400, 0], [0, 400]]))
    for n in range(30):
        assert large.evaluate(n) >= small.evaluate(n)


def test_prefix_check_examples():
    fib0 = LrsInstance(LinearRecurrence([1, 1]), [0, 1])
    assert prefix_check(fib0, validate([[1, 0], [0, 1]]), 0) == 0
    fib35 = LrsInstance(LinearRecurrence([1, 1]), [3, 5])
    assert prefix_check(fib35, validate([[100, 0], [0, 100]]), 50) is None


def test_prefix_check_shrinking_monotonicity():
    rng = random.Random(5)
    fib35 = LrsInstance(LinearRecurrence([1, 1]), [3, 5])
    for _ in range(10):
        S = _random_pd(rng, 2)
        nb = validate(S)
        if prefix_check(fib35, nb, 30) is None:
            for lam in (2, 10):
                assert prefix_check(fib35, nb.scale(lam), 30) is None


def _random_pd(rng, n):
    while True:
        B = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        S = linalg.mat_mul(linalg.transpose(B), B)
        try:
            validate(S)
            return S
        except InvalidInputError:
            continue
