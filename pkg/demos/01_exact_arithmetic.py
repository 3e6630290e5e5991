"""Tour of the exact scalar tower: surds, algebraic reals, root isolation.

Everything here is computed without floating point; floats appear only in
the printed approximations.
"""

from fractions import Fraction as F

from robustlrs import intpoly as ip
from robustlrs.algebraic import AlgebraicReal, is_root_of_unity, isolate_real_roots
from robustlrs.scalars import QuadraticSurd as S

print("=" * 70)
print("Quadratic surds: exact arithmetic in Q(sqrt(d))")
print("=" * 70)
golden = (S.sqrt_rational(5) - 1) / 2
print(f"golden conjugate g = (sqrt(5)-1)/2 = {golden} ~ {float(golden):.12f}")
print(f"check g^2 + g - 1 == 0: {(golden * golden + golden - 1).sign() == 0}")
r2 = S.sqrt_rational(2)
print(f"(1 + sqrt2)^2 = {(1 + r2) ** 2}   sqrt(3 + 2 sqrt2) = {(S(3, 2, 2)).try_sqrt()}")

print()
print("=" * 70)
print("Root isolation with multiplicities and exact conjugate pairs")
print("=" * 70)
# (X - 1)^3 (5 X^2 - 6 X + 5): triple root and a unit-circle pair
p = (1,)
for f in [(-1, 1)] * 3 + [(5, -6, 5)]:
    p = ip.mul(p, f)
print(f"polynomial: {list(p)}")
roots = isolate_real_roots(p)
for root, mult in roots.real:
    print(f"  real root ~ {float(root):.6f}  multiplicity {mult}")
for re, im, mult in roots.complex_pairs:
    print(f"  complex pair ~ {float(re):.6f} +- {float(im):.6f} i  (exact: re == 3/5: {re.compare(F(3, 5)) == 0})")

print()
print("=" * 70)
print("Comparison is decided exactly, not numerically")
print("=" * 70)
a = isolate_real_roots((-2, 0, 1)).real[1][0]  # sqrt 2
b = isolate_real_roots((-4, 0, 0, 0, 1)).real[1][0]  # fourth root of 4
print(f"sqrt(2) vs 4^(1/4): compare = {a.compare(b)} (0 means equal)")
print(f"sqrt(2) vs 1.41421356: compare = {a.compare(F(141421356, 10**8))}")

print()
print("=" * 70)
print("Root-of-unity detection (finite, exact)")
print("=" * 70)
for re, im, label in [
    (F(0), F(1), "i"),
    (S(F(-1, 2)), S(0, F(1, 2), 3), "(-1 + i sqrt3)/2"),
    (F(3, 5), F(4, 5), "(3 + 4i)/5"),
]:
    k = is_root_of_unity(re, im)
    print(f"  {label}: order {k if k else 'none (irrational rotation)'}")
