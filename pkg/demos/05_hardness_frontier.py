"""The order-5 frontier: robust positivity questions that would compute
Lagrange constants.

The constructed instances put quadratic growth against a unit-circle
rotation so that the ball-wide term inequality at index n is exactly a
question about n [n t - s].  The shipped deciders answer UNSUPPORTED on
them by design; a heuristic scan oracle drives the bisection instead, and
its enclosure lines up with the independent estimator.
"""

import io
import json
import contextlib
from fractions import Fraction as F

from robustlrs.angles import rotation_number_enclosure
from robustlrs.cli import main
from robustlrs.diophantine import estimate_Linf
from robustlrs.reduction import (
    approximate_lagrange,
    build_instance,
    critical_inequality_holds,
    q_ratio,
    stability_index,
)

print("=" * 70)
print("Building the instance for cos(theta) = 3/5, cos(phi) = 4/5, r = 1/10")
print("=" * 70)
inst = build_instance(F(3, 5), F(4, 5), F(1, 10))
print(f"recurrence coefficients: {[str(c) for c in inst.recurrence.coeffs]}")
print(f"initialisation: {[str(c) for c in inst.init]}")
N = stability_index(F(1, 10), F(1, 10))
print(f"index threshold from the numeric lemma: N = {N}")
print(f"8 n^2 Q(n) / 7 at n = 100: {float(q_ratio(100) * F(8 * 100 * 100, 7)):.9f} (increases to 1)")
holds = [n for n in range(30) if critical_inequality_holds(inst, n)]
print(f"indices < 30 where the critical inequality holds: {holds}")

print()
print("=" * 70)
print("Feeding the instance to the decider CLI: refused, by design")
print("=" * 70)
buf = io.StringIO()
with contextlib.redirect_stdout(buf):
    main(
        ["reduce", "build", "--cos-theta", "3/5", "--cos-phi", "4/5", "-r", "1/10",
         "--out", "/tmp/hard_instance.json"]
    )
buf = io.StringIO()
with contextlib.redirect_stdout(buf):
    code = main(["decide", "/tmp/hard_instance.json"])
doc = json.loads(buf.getvalue())
print(f"exit code {code}: {doc['decision']}  ({doc.get('reason', '')})")

print()
print("=" * 70)
print("Bisection with the heuristic scan oracle vs the estimator")
print("=" * 70)
res = approximate_lagrange(F(3, 5), F(4, 5), steps=8)
print(f"oracle-driven enclosure of the Lagrange constant: [{float(res.lo):.6f}, {float(res.hi):.6f}]")
print(f"oracle rigorous: {res.oracle_rigorous} (scan extrapolation, clearly flagged)")
tf = rotation_number_enclosure(F(3, 5), F(4, 5))
sf = rotation_number_enclosure(F(4, 5), F(3, 5))
slo, shi = sf(F(1, 10**30))
est = estimate_Linf(tf, (slo + shi) / 2, 10**6)
print(f"independent scan estimate: ~{float(est.enclosure.lo):.6f}")
print("the estimate falls inside the oracle enclosure:",
      float(res.lo) - 0.02 <= float(est.enclosure.lo) <= float(res.hi) + 0.02)
