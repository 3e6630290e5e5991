"""Acceptance gate: every criterion at its stated tolerance, one printed
pass/fail line each.  Run with `pytest tests/test_acceptance.py -v -s`."""

import math
import random
import time
from fractions import Fraction as F

import pytest

from helpers import case_c_instance, order4_instance
from robustlrs import linalg
from robustlrs.certificates import NO, UNSUPPORTED, YES
from robustlrs.diophantine import (
    ContinuedFraction,
    Psi,
    construct_target,
    estimate_Linf,
    ostrowski_expand,
    ostrowski_value,
    verify_target,
)
from robustlrs.falsify import FalsifierConfig, falsify
from robustlrs.neighbourhoods import derived_sequence, row_functionals, validate
from robustlrs.nonuniform import classify_dominant_form, decide_nonuniform, tangency_set
from robustlrs.recurrences import LinearRecurrence, LrsInstance, companion
from robustlrs.reduction import (
    build_instance,
    cos_defect,
    critical_inequality_holds,
    q_ratio,
    stability_index,
)
from robustlrs.scalars import QuadraticSurd as S, scalar_sign
from robustlrs.uniform import decide_robust_positivity, decide_robust_uniform_ultimate

_corpus_cache = {}


def _corpus():
    if "c" not in _corpus_cache:
        from corpus import decided_corpus

        _corpus_cache["c"] = decided_corpus(min_decided=200)
    return _corpus_cache["c"]


def _report(num, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{tag}] criterion {num}: {name}{suffix}")
    assert ok, f"criterion {num} {name} failed {suffix}"


def test_criterion_1_pipeline_soundness_corpus():
    t0 = time.time()
    corpus, attempts = _corpus()
    decided = len(corpus)
    bad_witness = 0
    falsified_yes = 0
    yes_count = 0
    for inst, nb, out in corpus:
        if out.decision == NO:
            w = out.witness
            inside = scalar_sign(nb.boundary_distance_sq(inst.init, w.c_prime) - 1) <= 0
            val = LrsInstance(inst.recurrence, w.c_prime).evaluate(w.n)
            if not (inside and scalar_sign(val) < 0):
                bad_witness += 1
        else:
            yes_count += 1
            hit = falsify(
                inst, nb, FalsifierConfig(horizon=10_000, samples=1_000, seed=77)
            )
            if hit is not None:
                falsified_yes += 1
    elapsed = time.time() - t0
    ok = (
        decided >= 200
        and bad_witness == 0
        and falsified_yes == 0
        and elapsed < 600
    )
    _report(
        1,
        "pipeline soundness corpus",
        ok,
        f"{decided} decided ({yes_count} YES), witnesses exact, "
        f"no YES falsified, {elapsed:.0f}s",
    )


def test_criterion_2_derived_sequence_equivalence():
    rng = random.Random(42)
    t0 = time.time()
    checked = 0
    for _ in range(50):
        order = rng.randint(1, 3)
        coeffs = [F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(order)]
        if coeffs[0] == 0:
            coeffs[0] = F(1, 2)
        inst = LrsInstance(
            LinearRecurrence(coeffs), [F(rng.randint(-5, 5)) for _ in range(order)]
        )
        lam = F(rng.randint(1, 50), rng.randint(1, 5))
        nb = validate(
            [[lam if i == j else 0 for j in range(order)] for i in range(order)]
        )
        v = derived_sequence(inst, nb)
        # oracle: brute-force matrix powers of the Kronecker lift
        A = companion(inst.recurrence)
        AA = linalg.kron(A, A)
        cc = [a * b for a in inst.init for b in inst.init]
        vec_sinv = [nb.S_inv[i][j] for i in range(order) for j in range(order)]
        state = [a - b for a, b in zip(cc, vec_sinv)]
        for n in range(101):
            if scalar_sign(v.evaluate(n) - state[0]) != 0:
                _report(2, "derived-sequence equivalence", False, f"mismatch at n={n}")
            state = linalg.mat_vec(AA, state)
        checked += 1
    _report(
        2,
        "derived-sequence equivalence",
        checked == 50,
        f"50 instances x 101 indices exact, {time.time()-t0:.0f}s",
    )


def test_criterion_3_impossibility_lemma():
    t0 = time.time()
    rng = random.Random(7)
    trials = 0
    failures = 0
    while trials < 100_000:
        # rational unit vector for u1 via the sphere parametrization
        v = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        nsq = 1 + sum(x * x for x in v)
        unit = [(1 - sum(x * x for x in v)) / nsq] + [2 * x / nsq for x in v]
        p1 = F(rng.randint(1, 9), rng.randint(1, 3))
        u1 = [p1 * x for x in unit]
        u2 = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]
        u3 = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]
        u4 = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]
        det = linalg.determinant([u1, u2, u3, u4])
        if det == 0:
            continue
        p2 = F(rng.randint(-5, 5), rng.randint(1, 3))
        u23 = [a + b for a, b in zip(u2, u3)]
        # enforce the first two proof identities:
        #   p1^2 = <u1, u1>            (z2 = 0)
        #   p1 (p2 + p3) = <u1, u23>   (liminf contribution vanishes)
        p3 = sum(a * b for a, b in zip(u1, u23)) / p1 - p2
        assert p1 * p1 == sum(a * a for a in u1)
        lhs = (p2 + p3) * (p2 + p3)
        rhs = sum(a * b for a, b in zip(u23, u23))
        if lhs == rhs:  # the impossible third identity
            failures += 1
        trials += 1
    elapsed = time.time() - t0
    ok = failures == 0 and elapsed < 300
    _report(
        3,
        "joint-vanishing impossibility",
        ok,
        f"10^5 exact systems, {failures} violations, {elapsed:.0f}s",
    )


def test_criterion_4_golden_lagrange_constant():
    t0 = time.time()
    golden = (S.sqrt_rational(5) - 1) / 2
    res = estimate_Linf(golden, 0, 10**6)
    mid = (res.enclosure.lo + res.enclosure.hi) / 2
    # |mid - 1/sqrt(5)| <= 1/100, exactly: compare squares via the surd
    inv_sqrt5 = S.sqrt_rational(5).inverse()
    diff = S(mid) - inv_sqrt5
    mag = diff if diff.sign() >= 0 else -diff
    ok = (mag - F(1, 100)).sign() <= 0 and time.time() - t0 < 60
    _report(
        4,
        "golden-ratio Lagrange constant",
        ok,
        f"enclosure ~{float(mid):.6f} vs 0.447214, {time.time()-t0:.0f}s",
    )


def test_criterion_5_constructive_target():
    t0 = time.time()
    x = S.sqrt_rational(2) - 1
    psi = Psi.inverse_power(2)
    ok = True
    for parity in ("even", "odd"):
        w = construct_target(x, psi, (F(3, 10), F(2, 5)), parity, count=20)
        want = 0 if parity == "even" else 1
        ok = ok and len(w.indices) >= 20
        ok = ok and all(n % 2 == want for n in w.indices)
        ok = ok and F(3, 10) <= w.y_lo and w.y_hi <= F(2, 5)
        ok = ok and verify_target(x, w, psi)  # exact: beats any precision
    elapsed = time.time() - t0
    ok = ok and elapsed < 60
    _report(
        5,
        "constructive approximation target",
        ok,
        f"20 indices per parity, exact verification, {elapsed:.0f}s",
    )


def test_criterion_6_ostrowski_roundtrip():
    t0 = time.time()
    rng = random.Random(13)
    golden = (S.sqrt_rational(5) - 1) / 2
    cf = ContinuedFraction.of(golden)
    ok = True
    tail_max = F(0)
    for _ in range(1000):
        y = F(rng.randint(0, 10**9), 10**9 + 7)
        exp = ostrowski_expand(y, cf, 30)
        if not exp.legal():
            ok = False
            break
        val, tail = ostrowski_value(exp)
        diff = y - val
        mag = diff if scalar_sign(diff) >= 0 else -diff
        if scalar_sign(tail - mag) < 0:
            ok = False
            break
        thi = tail.enclosure(F(1, 10**12))[1] if hasattr(tail, "enclosure") else F(tail)
        tail_max = max(tail_max, thi)
    ok = ok and tail_max < F(1, 10**5)
    elapsed = time.time() - t0
    ok = ok and elapsed < 60
    _report(
        6,
        "Ostrowski round-trip",
        ok,
        f"10^3 expansions, tail bound {float(tail_max):.2e} < 1e-5, {elapsed:.0f}s",
    )


def test_criterion_7_reduction_consistency():
    t0 = time.time()
    r, eps = F(1, 10), F(1, 10)
    inst = build_instance(F(3, 5), F(4, 5), r)
    N = stability_index(r, eps)
    # exact rational approximations of the rotation data
    prec = F(1, 10**40)
    tlo, thi = (F(v) for v in inst.rotation_number()(prec))
    slo, shi = (F(v) for v in inst.phase_fraction()(prec))
    T, Sph = (tlo + thi) / 2, (slo + shi) / 2
    t_err = (thi - tlo) / 2 + (shi - slo) / 2
    from robustlrs.angles import pi_enclosure
    from robustlrs.scalars import sqrt_bounds

    pi_lo, pi_hi = pi_enclosure(F(1, 10**12))
    s7_lo, s7_hi = sqrt_bounds(7 * r, F(1, 10**12))
    yes_floor = (1 - eps) * s7_lo / (4 * pi_hi)
    no_ceil = s7_hi / ((1 - eps) * 4 * pi_lo)
    rng = random.Random(99)
    ns = sorted(rng.randint(N, N + 30_000) for _ in range(10_000))
    violations = 0
    cache = None
    den = T.denominator * Sph.denominator // math.gcd(T.denominator, Sph.denominator)
    TN, SN = int(T * den), int(Sph * den)
    for n in ns:
        pair, (cos_d, _) = cos_defect(inst, n, prev=cache)
        cache = (n, pair[0], pair[1])
        lhs = r * (n * n) + r / 2 + 1 - cos_d
        holds = (
            scalar_sign(lhs) >= 0
            and scalar_sign(lhs * lhs - (r * r) * (n**4 + n * n + 2)) >= 0
        )
        rr = (n * TN - SN) % den
        dist = F(min(rr, den - rr), den)
        value_lo = n * dist - n * n * t_err
        value_hi = n * dist + n * n * t_err
        if holds and not (value_lo > yes_floor):
            violations += 1
        if not holds and not (value_hi < no_ceil):
            violations += 1
    elapsed = time.time() - t0
    ok = violations == 0 and elapsed < 300
    _report(
        7,
        "reduction implication consistency",
        ok,
        f"10^4 samples beyond N={N}, {violations} violations, {elapsed:.0f}s",
    )


def test_criterion_8_envelope_asymptotics():
    t0 = time.time()
    ok = True
    for n in range(1, 10_001):
        ratio_minus_1 = q_ratio(n) * F(8 * n * n, 7) - 1
        if ratio_minus_1.sign() >= 0:
            ok = False
            break
        if n >= 100:
            gap = q_ratio(n) * F(8 * n * n, 7) - F(999, 1000)
            if gap.sign() <= 0:
                ok = False
                break
    elapsed = time.time() - t0
    _report(
        8,
        "decay envelope asymptotics",
        ok and elapsed < 300,
        f"exact surd checks to n=10^4, {elapsed:.0f}s",
    )


def test_criterion_9_nonuniform_geometry():
    t0 = time.time()
    # single-point tangency (ball touching the cone)
    a = F(1, 2)
    r_sq = (1 - a) ** 2 / 2
    inst1, nb1 = case_c_instance(
        [F(1), F(-1, 10), a * F(-3, 5), a * F(4, 5)],
        [r_sq, F(1, 64), r_sq, r_sq],
        F(1, 2),
    )
    case1 = classify_dominant_form(inst1)
    tset1 = tangency_set(case1, inst1, nb1)
    single_ok = (
        len(tset1.intervals) == 1
        and tset1.intervals[0].single_point
        and tset1.intervals[0].lo.compare(F(3, 5)) == 0
    )
    # nestled ball: positive-length contact, decaying alternating root
    inst2, nb2 = case_c_instance(
        [F(1), F(200), F(0), F(0)],
        [F(1, 2), F(1, 16), F(1, 2), F(1, 2)],
        F(-1, 2),
    )
    case2 = classify_dominant_form(inst2)
    tset2 = tangency_set(case2, inst2, nb2)
    out2 = decide_nonuniform(inst2, nb2)
    negs = sorted({out2.witness.n, *out2.extra_violations}) if out2.witness else []
    corro_ok = (
        tset2.has_positive_length
        and out2.decision == NO
        and len(negs) >= 3
        and max(negs) < 10**6
    )
    exact_ok = True
    if corro_ok:
        point = out2.witness.c_prime
        sub = LrsInstance(inst2.recurrence, point)
        for n in negs:
            if scalar_sign(sub.evaluate(n)) >= 0:
                exact_ok = False
    elapsed = time.time() - t0
    ok = single_ok and corro_ok and exact_ok and elapsed < 600
    _report(
        9,
        "cone-contact geometry",
        ok,
        f"single-point at cos=3/5; nestled NO with {len(negs)} exact negatives, "
        f"{elapsed:.0f}s",
    )


def test_criterion_10_implication_chain_and_monotonicity():
    t0 = time.time()
    corpus, _ = _corpus()
    chain_violations = 0
    mono_violations = 0
    checked_chain = 0
    checked_mono = 0
    rng = random.Random(5)
    sample = corpus[:120]
    for inst, nb, pos in sample:
        uu = decide_robust_uniform_ultimate(inst, nb)
        if pos.decision == YES:
            if uu.decision == NO:
                chain_violations += 1
            checked_chain += 1
        if inst.order <= 4 and uu.decision in (YES, NO):
            nu = decide_nonuniform(inst, nb)
            if uu.decision == YES and nu.decision == NO:
                chain_violations += 1
            if nu.decision in (YES, NO):
                checked_chain += 1
    for inst, nb, pos in sample[:40]:
        if pos.decision != YES:
            continue
        for lam in (2, 10):
            out = decide_robust_positivity(inst, nb.scale(lam))
            checked_mono += 1
            if out.decision != YES:
                mono_violations += 1
    elapsed = time.time() - t0
    ok = chain_violations == 0 and mono_violations == 0
    _report(
        10,
        "implication chain and ball monotonicity",
        ok,
        f"{checked_chain} chain checks, {checked_mono} scalings, "
        f"{chain_violations + mono_violations} violations, {elapsed:.0f}s",
    )
