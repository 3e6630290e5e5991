"""Robust positivity across a Mahalanobis ball of initialisations.

The pipeline: analyze the center orbit, build the derived sequence whose
sign encodes the ball-wide term inequality, analyze it (with the
double-root machinery when growth collapses onto one modulus), then check
the finite prefix exactly.
"""

from fractions import Fraction as F

from robustlrs import linalg
from robustlrs.neighbourhoods import derived_sequence, validate
from robustlrs.recurrences import LinearRecurrence, LrsInstance, _pow_complex
from robustlrs.scalars import as_exact
from robustlrs.uniform import (
    decide_robust_positivity,
    decide_robust_uniform_ultimate,
    order4_analyze,
)


def show(title, cert):
    print(f"--- {title}")
    print(f"    decision: {cert.decision}   trace: {cert.trace}")
    if cert.decision == "YES":
        print(f"    thresholds N1={cert.N1} N2={cert.N2}, prefix checked to {cert.N}")
    if cert.witness:
        w = cert.witness
        print(f"    witness: index {w.n}, value {w.value}")


print("=" * 70)
print("Fibonacci with a ball of radius 1/10 around (3, 5): safe")
print("=" * 70)
fib = LinearRecurrence([1, 1])
show(
    "radius 1/10",
    decide_robust_positivity(LrsInstance(fib, [3, 5]), validate([[100, 0], [0, 100]])),
)
print()
print("Same center, unit ball: the ball reaches a negative orbit")
show(
    "radius 1",
    decide_robust_positivity(LrsInstance(fib, [3, 5]), validate([[1, 0], [0, 1]])),
)

print()
print("=" * 70)
print("The double-root geometry: growth collapses onto one modulus")
print("=" * 70)
# basis [n, 1, cos(n th), sin(n th)] with cos th = 3/5; ball aligned to it
COS, SIN = F(3, 5), F(4, 5)
V = []
for n in range(4):
    re_n, im_n = _pow_complex(as_exact(COS), as_exact(SIN), n)
    V.append([as_exact(n), as_exact(1), re_n, im_n])
quad = [F(1), -2 * COS, F(1)]
sq = [F(1), F(-2), F(1)]
cp = [sum(sq[i] * quad[j] for i in range(3) for j in range(3) if i + j == k) for k in range(5)]
rec = LinearRecurrence([-cp[i] for i in range(4)])


def aligned(p, s):
    init = linalg.mat_vec(V, [as_exact(x) for x in p])
    diag = [[(as_exact(si) ** 2 if i == j else as_exact(0)) for j in range(4)] for i, si in enumerate(s)]
    S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
    return LrsInstance(rec, init), validate(linalg.inverse(S_inv))


inst, nb = aligned([F(1), F(6), F(3, 2), F(2)], [F(1), F(1, 2), F(1, 2), F(1, 2)])
coeffs, label = order4_analyze(inst, nb)
print(f"case label: {label} (liminf of the linear group is positive)")
show("liminf > 0", decide_robust_positivity(inst, nb))

t = F(1, 4)
inst2, nb2 = aligned([F(1), 5 * t, 3 * t, 4 * t], [F(1), F(2), F(1, 8), F(1, 8)])
coeffs2, label2 = order4_analyze(inst2, nb2)
print()
print(f"case label: {label2} (exact tangency, the offset part dips negative)")
show("liminf = 0, infinitely many violations", decide_robust_uniform_ultimate(inst2, nb2))

print()
print("=" * 70)
print("The derived sequence is an honest LRS; its terms are exact")
print("=" * 70)
v = derived_sequence(inst, nb)
print(f"order of the derived sequence: {v.order}")
print(f"first terms: {[str(v.evaluate(n)) for n in range(4)]}")
