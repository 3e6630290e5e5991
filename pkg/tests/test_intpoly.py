from fractions import Fraction as F

import pytest

from robustlrs import intpoly as ip
from robustlrs.scalars import InvalidInputError


def test_gcd_and_squarefree():
    p = ip.mul((-1, 1), (-1, 1))  # (x-1)^2
    q = ip.mul(p, (-2, 0, 1))  # (x-1)^2 (x^2-2)
    assert ip.gcd(q, ip.derivative(q)) == (-1, 1)
    assert ip.squarefree_part(q) == ip.primitive(ip.mul((-1, 1), (-2, 0, 1)))


def test_squarefree_decomposition_multiplicities():
    p = ip.mul(ip.mul((-1, 1), (-1, 1)), ip.mul((-1, 1), (1, 1)))  # (x-1)^3 (x+1)
    decomp = dict(ip.squarefree_decomposition(p))
    assert decomp[(-1, 1)] == 3
    assert decomp[(1, 1)] == 1


def test_sturm_counts():
    p = (-2, 0, 1)  # x^2 - 2
    ch = ip.sturm_chain(p)
    assert ip.sturm_count(ch, F(-2), F(2)) == 2
    assert ip.sturm_count(ch, F(0), F(2)) == 1
    assert ip.sturm_count(ch, F(3, 2), F(2)) == 0
    # no real roots
    ch2 = ip.sturm_chain((1, 0, 1))
    assert ip.sturm_count(ch2, F(-10), F(10)) == 0


def test_isolation_with_rational_roots():
    # x (x-1) (x^2 - 2): rational roots appear as degenerate intervals
    p = ip.mul(ip.mul((0, 1), (-1, 1)), (-2, 0, 1))
    iv = ip.isolate_squarefree(p)
    assert len(iv) == 4
    degenerate = [lo for lo, hi in iv if lo == hi]
    assert F(0) in degenerate and F(1) in degenerate


def test_resultant_values():
    # res(x^2-2, x^2-3) = (2-3)^2 = 1
    assert ip.resultant((-2, 0, 1), (-3, 0, 1)) == 1
    assert abs(ip.resultant((-2, 1), (-3, 1))) == 1


def test_resultant_sum_and_product():
    s = ip.resultant_poly_sum((-2, 0, 1), (-3, 0, 1))
    assert s == (1, 0, -10, 0, 1)  # minimal polynomial of sqrt2+sqrt3
    p = ip.resultant_poly_prod((-2, 0, 1), (-3, 0, 1))
    assert ip.squarefree_part(p) == (-6, 0, 1)


def test_rational_roots():
    p = ip.mul(ip.mul((1, 2), (-3, 1)), (1, 0, 1))  # (2x+1)(x-3)(x^2+1)
    assert ip.rational_roots(p) == [F(-1, 2), F(3)]


@pytest.mark.parametrize(
    "factors",
    [
        [(-1, 1), (1, 1), (1, 0, 1)],
        [(-2, 0, 1), (1, 0, 1)],
        [(5, -6, 5), (-1, 1), (-1, 1), (-1, 1)],
        [(1, 1, 0, 0, 1)],  # irreducible quartic stays whole
        [(1, 2), (-3, 1, 1), (2, 0, 1)],
    ],
)
def test_factorization_roundtrip(factors):
    prod = (1,)
    for f in factors:
        prod = ip.mul(prod, f)
    out = ip.factor_rational(prod)
    rebuilt = (1,)
    for f, mult in out:
        for _ in range(mult):
            rebuilt = ip.mul(rebuilt, f)
    assert ip.primitive(rebuilt) == ip.primitive(prod)
    # all reported factors of degree <= 3 with no rational root are irreducible
    for f, _ in out:
        if ip.degree(f) == 1:
            continue
        assert not ip.rational_roots(f)


def test_quintic_split():
    p = ip.mul((1, 1, 1), (-1, -1, 0, 1))  # (x^2+x+1)(x^3-x-1)
    out = ip.factor_rational(p)
    assert sorted(ip.degree(f) for f, _ in out) == [2, 3]


def test_shift_and_reverse():
    p = (-2, 0, 1)
    assert ip.shift(p, 1) == (-1, 2, 1)  # (x+1)^2 - 2
    assert ip.reverse((1, 2, 3)) == (3, 2, 1)
    assert ip.scale_roots((-2, 0, 1), 2, 1) == ip.primitive((-8, 0, 1))


def test_zero_polynomial_errors():
    with pytest.raises(ZeroDivisionError):
        ip.divmod_frac([F(1)], [])
