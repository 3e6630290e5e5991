"""Continued fractions, Ostrowski digits, and Lagrange-constant hunting."""

import math
from fractions import Fraction as F

from robustlrs.diophantine import (
    ContinuedFraction,
    Psi,
    cf_expand,
    construct_target,
    estimate_L,
    estimate_Linf,
    ostrowski_expand,
    ostrowski_value,
    verify_target,
)
from robustlrs.scalars import QuadraticSurd as S

GOLDEN = (S.sqrt_rational(5) - 1) / 2
SQRT2M1 = S.sqrt_rational(2) - 1

print("=" * 70)
print("Continued fractions (exact, eventually periodic for surds)")
print("=" * 70)
for label, x in [("(sqrt5-1)/2", GOLDEN), ("sqrt2 - 1", SQRT2M1), ("3/7", F(3, 7))]:
    cf = cf_expand(x, 10)
    qs = cf.quotients if cf.terminated else cf.partial_quotients(10)
    print(f"  {label}: {qs}{' (terminates)' if cf.terminated else ''}")
cf = cf_expand(GOLDEN, 10)
print(f"  golden convergents: {cf.convergents(6)}")

print()
print("=" * 70)
print("Lagrange constants by certified scanning")
print("=" * 70)
res = estimate_Linf(GOLDEN, 0, 10**6)
print(f"  liminf n[n g]      ~ {float((res.enclosure.lo + res.enclosure.hi)/2):.9f}")
print(f"  1/sqrt(5)          = {1/math.sqrt(5):.9f}  (the classical extremal value)")
res2 = estimate_Linf(SQRT2M1, 0, 10**6)
print(f"  liminf n[n(sqrt2-1)] ~ {float(res2.enclosure.lo):.9f}   1/(2 sqrt2) = {1/(2*math.sqrt(2)):.9f}")
resL = estimate_L(GOLDEN, 0, 10**6)
print(f"  inf n[n g] ~ {float(resL.enclosure.lo):.9f} (the n=1 dip beats the liminf)")

print()
print("=" * 70)
print("Ostrowski numeration in the golden base")
print("=" * 70)
base = ContinuedFraction.of(GOLDEN)
y = F(1, 3)
exp = ostrowski_expand(y, base, 25)
val, tail = ostrowski_value(exp)
print(f"  digits of 1/3: {exp.digits}")
print(f"  legal: {exp.legal()}   round-trip error < tail bound {float(tail):.2e}")

print()
print("=" * 70)
print("Constructive targets: [n x - y] < 1/n^2 on demand, any parity")
print("=" * 70)
psi = Psi.inverse_power(2)
for parity in ("even", "odd"):
    w = construct_target(SQRT2M1, psi, (F(3, 10), F(2, 5)), parity, count=8)
    print(f"  {parity}: y in [{float(w.y_lo):.9f}, {float(w.y_hi):.9f}]")
    shown = ", ".join(str(n) for n in w.indices[:4])
    print(f"    indices: {shown}, ... (largest has {len(str(w.indices[-1]))} digits)")
    print(f"    exact verification: {verify_target(SQRT2M1, w, psi)}")
