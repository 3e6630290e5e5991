"""Non-uniform ultimate positivity: the cone-contact geometry.

The liminf region of a rotating dominant part is the cone z >= |(x, y)|.
A ball strictly inside is a YES; touching at one generator leaves a single
critical initialisation; nestled contact along a continuum of generators
with a threatening decay term is a NO by the rotation-approximation
argument, corroborated here with exact negative terms.
"""

from fractions import Fraction as F

from robustlrs import linalg
from robustlrs.neighbourhoods import validate
from robustlrs.nonuniform import classify_dominant_form, decide_nonuniform, tangency_set
from robustlrs.recurrences import LinearRecurrence, LrsInstance, _pow_complex
from robustlrs.scalars import as_exact, scalar_sign

COS, SIN = F(3, 5), F(4, 5)
ALPHA_POS, ALPHA_NEG = F(1, 2), F(-1, 2)


def case_c(p, s_sq, alpha):
    a = F(alpha)
    V = []
    for n in range(4):
        re_n, im_n = _pow_complex(as_exact(COS), as_exact(SIN), n)
        V.append([as_exact(1), as_exact(a**n), re_n, im_n])
    quad = [F(1), -2 * COS, F(1)]
    lin = [F(-1), F(1)]
    lin2 = [-a, F(1)]
    cp = [F(0)] * 5
    for i, x in enumerate(lin):
        for j, y in enumerate(lin2):
            for k, z in enumerate(quad):
                cp[i + j + k] += x * y * z
    rec = LinearRecurrence([-cp[i] for i in range(4)])
    init = linalg.mat_vec(V, [as_exact(x) for x in p])
    diag = [[(as_exact(s_sq[i]) if i == j else as_exact(0)) for j in range(4)] for i in range(4)]
    S_inv = linalg.mat_mul(V, linalg.mat_mul(diag, linalg.transpose(V)))
    return LrsInstance(rec, init), validate(linalg.inverse(S_inv))


print("=" * 70)
print("Ball strictly inside the cone: YES")
print("=" * 70)
inst, nb = case_c([F(1), F(1, 5), F(1, 10), F(0)], [F(1, 100)] * 4, ALPHA_POS)
out = decide_nonuniform(inst, nb)
print(f"decision: {out.decision}   trace: {out.trace}")

print()
print("=" * 70)
print("Ball tangent along exactly one generator")
print("=" * 70)
a = F(1, 2)
r_sq = (1 - a) ** 2 / 2
inst1, nb1 = case_c(
    [F(1), F(-1, 10), a * F(-3, 5), a * F(4, 5)], [r_sq, F(1, 64), r_sq, r_sq], ALPHA_POS
)
case1 = classify_dominant_form(inst1)
tset = tangency_set(case1, inst1, nb1)
print(f"tangency intervals: {len(tset.intervals)}")
iv = tset.intervals[0]
print(f"single point: {iv.single_point}, at cos(phi) ~ {float(iv.lo):.6f} (exactly 3/5: {iv.lo.compare(F(3,5)) == 0})")
out1 = decide_nonuniform(inst1, nb1)
print(f"decision: {out1.decision}")
print(f"trace: {out1.trace}")

print()
print("=" * 70)
print("Nestled ball: contact along the whole circle, decaying flip term")
print("=" * 70)
inst2, nb2 = case_c(
    [F(1), F(200), F(0), F(0)], [F(1, 2), F(1, 16), F(1, 2), F(1, 2)], ALPHA_NEG
)
case2 = classify_dominant_form(inst2)
tset2 = tangency_set(case2, inst2, nb2)
print(f"positive-length contact: {tset2.has_positive_length}")
out2 = decide_nonuniform(inst2, nb2)
print(f"decision: {out2.decision}   trace: {out2.trace}")
negs = sorted({out2.witness.n, *out2.extra_violations})
print(f"corroborating exact negative terms at the boundary point: {negs}")
sub = LrsInstance(inst2.recurrence, out2.witness.c_prime)
for n in negs:
    print(f"  u_{n} = {str(sub.evaluate(n))[:40]}...  (< 0: {scalar_sign(sub.evaluate(n)) < 0})")
print(
    "boundary membership exact:",
    scalar_sign(nb2.boundary_distance_sq(inst2.init, out2.witness.c_prime) - 1) == 0,
)
