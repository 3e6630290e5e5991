"""Linear recurrence sequences over exact scalars.

Provides companion-matrix evaluation, the real exponential-polynomial
closed form (roots, multiplicities, exact coefficients), dominance
analysis with the liminf of the normalized dominant part, pointwise
sum/product closure via minimal-order reconstruction, and the interleaving
decomposition for degenerate spectra.

The closed form is computed exactly whenever every characteristic root
lives in Q or a single real quadratic extension Q(sqrt(d)); anything
richer raises UnsupportedProblemError and the deciders answer UNSUPPORTED.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import intpoly as ip
from . import linalg
from .algebraic import AlgebraicReal
from .scalars import (
    InvalidInputError,
    QuadraticSurd,
    Scalar,
    UnsupportedProblemError,
    as_exact,
    scalar_is_rational,
    scalar_sign,
    scalar_sqrt,
)


def _S(x) -> Scalar:
    return as_exact(x)


class LinearRecurrence:
    """Recurrence u_{n+k} = a_{k-1} u_{n+k-1} + ... + a_0 u_n, a_0 != 0."""

    def __init__(self, coeffs: Sequence):
        self.coeffs = [_S(c) for c in coeffs]
        if not self.coeffs:
            raise InvalidInputError("empty recurrence")
        if scalar_sign(self.coeffs[0]) == 0:
            raise InvalidInputError("a_0 must be nonzero")
        self.order = len(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(scalar_is_rational(c) for c in self.coeffs)

    def char_poly_int(self) -> tuple[int, ...]:
        """X^k - a_{k-1} X^{k-1} - ... - a_0 cleared to integers."""
        if not self.is_rational:
            raise UnsupportedProblemError("irrational recurrence coefficients")
        fr = [-Fraction(QuadraticSurd.of(c).as_fraction()) for c in self.coeffs]
        return ip.from_fractions(fr + [Fraction(1)])

    def __repr__(self):
        return f"LinearRecurrence({self.coeffs})"


class LrsInstance:
    """A recurrence together with its initialisation vector."""

    def __init__(self, recurrence: LinearRecurrence, init: Sequence):
        if not isinstance(recurrence, LinearRecurrence):
            recurrence = LinearRecurrence(recurrence)
        self.recurrence = recurrence
        self.init = [_S(c) for c in init]
        if len(self.init) != recurrence.order:
            raise InvalidInputError("initialisation length must match the order")

    @property
    def order(self) -> int:
        return self.recurrence.order

    def evaluate(self, n: int) -> Scalar:
        """Exact u_n; linear-time iteration with a matrix-power fast path
        for large isolated indices."""
        if n < 0:
            raise InvalidInputError("index must be a natural number")
        k = self.order
        if n < k:
            return self.init[n]
        if n > 4096:
            return self.evaluate_pow(n)
        state = list(self.init)
        a = self.recurrence.coeffs
        for _ in range(n - k + 1):
            nxt = a[0] * state[0]
            for i in range(1, k):
                nxt = nxt + a[i] * state[i]
            state = state[1:] + [nxt]
        return state[-1]

    def evaluate_pow(self, n: int) -> Scalar:
        A = companion(self.recurrence)
        An = linalg.mat_pow(A, n)
        return linalg.vec_dot(An[0], self.init)

    def sequence(self, count: int) -> list:
        k = self.order
        out = list(self.init[: min(k, count)])
        a = self.recurrence.coeffs
        state = list(self.init)
        while len(out) < count:
            nxt = a[0] * state[0]
            for i in range(1, k):
                nxt = nxt + a[i] * state[i]
            state = state[1:] + [nxt]
            out.append(nxt)
        return out[:count]

    def __repr__(self):
        return f"LrsInstance(a={self.recurrence.coeffs}, c={self.init})"


def companion(rec: LinearRecurrence) -> list:
    """Companion matrix: shifted unit rows, last row the coefficients."""
    k = rec.order
    A = [[_S(0)] * k for _ in range(k)]
    for i in range(k - 1):
        A[i][i + 1] = _S(1)
    A[k - 1] = [c for c in rec.coeffs]
    return A


def fibonacci() -> LrsInstance:
    return LrsInstance(LinearRecurrence([1, 1]), [0, 1])


# -- closed form -------------------------------------------------------------------


@dataclass
class RealTerm:
    root: Scalar  # may be negative
    mult: int
    coeffs: list  # coefficient of root^n * n^l for l = 0..mult-1


@dataclass
class PairTerm:
    re: Scalar
    im: Scalar  # > 0
    mult: int
    cos_coeffs: list  # multiply Re(gamma^n) * n^l
    sin_coeffs: list  # multiply Im(gamma^n) * n^l

    @property
    def modulus_sq(self) -> Scalar:
        return self.re * self.re + self.im * self.im


@dataclass
class ClosedForm:
    real_terms: list
    pair_terms: list
    order: int

    def evaluate(self, n: int) -> Scalar:
        acc = _S(0)
        for t in self.real_terms:
            p = _pow_scalar(t.root, n)
            nl = 1
            for l in range(t.mult):
                acc = acc + t.coeffs[l] * p * nl
                nl *= n
        for t in self.pair_terms:
            re_n, im_n = _pow_complex(t.re, t.im, n)
            nl = 1
            for l in range(t.mult):
                acc = acc + (t.cos_coeffs[l] * re_n + t.sin_coeffs[l] * im_n) * nl
                nl *= n
        return acc

    def spectrum(self) -> list:
        """(modulus_sq, mult, kind, term) for every distinct root group."""
        out = []
        for t in self.real_terms:
            out.append((t.root * t.root, t.mult, "real", t))
        for t in self.pair_terms:
            out.append((t.modulus_sq, t.mult, "pair", t))
        return out


def _pow_scalar(x: Scalar, n: int) -> Scalar:
    if isinstance(x, QuadraticSurd):
        return x**n
    return _S(Fraction(x) ** n)


def _pow_complex(re: Scalar, im: Scalar, n: int) -> tuple[Scalar, Scalar]:
    """(Re(gamma^n), Im(gamma^n)) for gamma = re + i*im, exactly."""
    rr, ri = _S(1), _S(0)
    br, bi = re, im
    while n:
        if n & 1:
            rr, ri = rr * br - ri * bi, rr * bi + ri * br
        br, bi = br * br - bi * bi, 2 * br * bi
        n >>= 1
    return rr, ri


def closed_form(inst: LrsInstance) -> ClosedForm:
    """Exact exponential-polynomial decomposition of the sequence.

    Supported whenever all characteristic roots lie in Q or one real
    quadratic extension; the coefficient vector is solved from the first
    `order` terms, so evaluate() of the result agrees with the recurrence
    everywhere.
    """
    spectrum = instance_spectrum(inst)
    k = inst.order
    # unknown layout: real terms (root, l), then pairs (x_l, y_l interleaved)
    cols = []
    for t in spectrum["real"]:
        for l in range(t[1]):
            cols.append(("real", t[0], l))
    for re, im, mult in spectrum["pairs"]:
        for l in range(mult):
            cols.append(("cos", (re, im), l))
            cols.append(("sin", (re, im), l))
    if len(cols) != k:
        raise UnsupportedProblemError("spectrum does not span the solution space")
    rows = []
    for n in range(k):
        row = []
        for kind, root, l in cols:
            if kind == "real":
                row.append(_pow_scalar(root, n) * (n**l))
            else:
                re_n, im_n = _pow_complex(root[0], root[1], n)
                row.append((re_n if kind == "cos" else im_n) * (n**l))
        rows.append(row)
    sol = linalg.solve(rows, list(inst.init))
    real_terms = [RealTerm(root, mult, [_S(0)] * mult) for root, mult in spectrum["real"]]
    pair_terms = [
        PairTerm(re, im, mult, [_S(0)] * mult, [_S(0)] * mult)
        for re, im, mult in spectrum["pairs"]
    ]
    idx = 0
    for t in real_terms:
        for l in range(t.mult):
            t.coeffs[l] = sol[idx]
            idx += 1
    for t in pair_terms:
        for l in range(t.mult):
            t.cos_coeffs[l] = sol[idx]
            t.sin_coeffs[l] = sol[idx + 1]
            idx += 2
    return ClosedForm(real_terms, pair_terms, k)


def instance_spectrum(inst: LrsInstance) -> dict:
    """Characteristic roots within the quadratic tower.

    Returns {"real": [(root, mult)], "pairs": [(re, im, mult)]} or raises
    UnsupportedProblemError when a root needs a richer field.
    """
    rec = inst.recurrence
    if not rec.is_rational:
        raise UnsupportedProblemError("irrational recurrence coefficients")
    cp = rec.char_poly_int()
    real_out = []
    pair_out = []
    for f, mult in ip.factor_rational(cp):
        d = ip.degree(f)
        if d == 1:
            real_out.append((_S(Fraction(-f[0], f[1])), mult))
            continue
        if d == 2:
            c0, c1, c2 = f
            disc = c1 * c1 - 4 * c2 * c0
            re = Fraction(-c1, 2 * c2)
            if disc < 0:
                im = QuadraticSurd.sqrt_rational(Fraction(-disc, 4 * c2 * c2))
                pair_out.append((_S(re), im, mult))
            else:
                off = QuadraticSurd.sqrt_rational(Fraction(disc, 4 * c2 * c2))
                real_out.append((QuadraticSurd(re) + off, mult))
                real_out.append((QuadraticSurd(re) - off, mult))
            continue
        if d == 4:
            quads = _try_quartic_over_surd(f)
            if quads is not None:
                for re, im in quads:
                    pair_out.append((re, im, mult))
                continue
        raise UnsupportedProblemError(
            f"characteristic factor of degree {d} outside the quadratic tower"
        )
    _require_single_radicand(real_out, pair_out)
    return {"real": real_out, "pairs": pair_out}


def _try_quartic_over_surd(f):
    """Split an irreducible quartic into two conjugate complex pairs with
    components in one Q(sqrt(d)), when possible (e.g. x^4 + 1)."""
    from .algebraic import isolate_real_roots

    rd = isolate_real_roots(f)
    if rd.real:
        return None
    out = []
    for re_a, im_a, _ in rd.complex_pairs:
        re_s = re_a.try_surd()
        im_s = im_a.try_surd()
        if re_s is None or im_s is None:
            return None
        out.append((re_s, im_s))
    return out


def _require_single_radicand(real_out, pair_out):
    ds = set()
    for v, _ in real_out:
        if isinstance(v, QuadraticSurd) and not v.is_rational:
            ds.add(v.d)
    for re, im, _ in pair_out:
        for v in (re, im):
            if isinstance(v, QuadraticSurd) and not v.is_rational:
                ds.add(v.d)
    if len(ds) > 1:
        raise UnsupportedProblemError(f"roots span multiple radicands {sorted(ds)}")


# -- dominance ---------------------------------------------------------------------


@dataclass
class DominantPart:
    """Normalized contribution of the fastest-growing terms.

    growth = (modulus_sq, l): terms grow like sqrt(modulus_sq)^n * n^l.
    z: coefficient of the positive real dominant root, w: of the negative
    one; pairs: [(x, y, re, im)] for dominant conjugate pairs, with the
    convention that the contribution is x cos(n theta) + y sin(n theta)
    after normalizing gamma to the unit circle.
    """

    modulus_sq: Scalar
    level: int
    z: Scalar
    w: Scalar
    pairs: list


def dominant_part(cf: ClosedForm) -> Optional[DominantPart]:
    """Spectrum-level dominant data; None when no positive real root
    attains both the maximal modulus and the maximal multiplicity there
    (ultimate-positivity questions are then immediately NO)."""
    groups = cf.spectrum()
    if not groups:
        return None
    max_mod = groups[0][0]
    for mod, *_ in groups[1:]:
        if scalar_sign(mod - max_mod) > 0:
            max_mod = mod
    dom = [g for g in groups if scalar_sign(g[0] - max_mod) == 0]
    max_mult = max(g[1] for g in dom)
    level = max_mult - 1
    z = _S(0)
    w = _S(0)
    pairs = []
    has_positive = False
    for mod, mult, kind, term in dom:
        if kind == "real":
            if scalar_sign(term.root) > 0 and mult == max_mult:
                has_positive = True
                z = term.coeffs[level]
            elif scalar_sign(term.root) < 0 and mult == max_mult:
                w = term.coeffs[level]
        else:
            if mult == max_mult:
                pairs.append(
                    (term.cos_coeffs[level], term.sin_coeffs[level], term.re, term.im)
                )
    if not has_positive:
        return None
    return DominantPart(max_mod, level, z, w, pairs)


def liminf_dominant(dp: DominantPart):
    """liminf of the normalized dominant contribution: z - sqrt(x^2+y^2) - |w|.

    Valid when at most one conjugate pair is dominant and its angle is not
    a rational multiple of 2*pi (callers route degenerate spectra through
    the interleaving decomposition instead).
    """
    from .scalars import IncompatibleSurdError

    if len(dp.pairs) > 1:
        raise UnsupportedProblemError("multiple dominant conjugate pairs")
    if not dp.pairs:
        absw = dp.w if scalar_sign(dp.w) >= 0 else -dp.w
        return AlgebraicReal.of(dp.z - absw)
    x, y, re, im = dp.pairs[0]
    _require_irrational_angle(re, im)
    amp_sq = x * x + y * y
    absw = dp.w if scalar_sign(dp.w) >= 0 else -dp.w
    amp = scalar_sqrt(amp_sq)
    if amp is not None:
        try:
            return AlgebraicReal.of(dp.z - amp - absw)
        except IncompatibleSurdError:
            pass
    return AlgebraicReal.of(dp.z - absw) - AlgebraicReal.of(amp_sq).sqrt()


def _require_irrational_angle(re, im):
    k = unit_angle_order(re, im)
    if k is not None:
        raise InvalidInputError(
            f"rotation angle is a rational multiple of 2*pi (order {k}); "
            "use the interleaving decomposition"
        )


def unit_angle_order(re, im) -> Optional[int]:
    """Order k of gamma/|gamma| when it is a root of unity, else None.

    Detected inside the tower: gamma^j real and positive for the smallest
    j <= 2 d^2 decides (the components live in degree <= 4 fields here,
    hence d <= 8 and the bound 128).
    """
    bound = 128
    rr, ri = _S(1), _S(0)
    for j in range(1, bound + 1):
        rr, ri = rr * re - ri * im, rr * im + ri * re
        if scalar_sign(ri) == 0 and scalar_sign(rr) > 0:
            return j
    return None


# -- sums, products, minimal order ---------------------------------------------------


def minimal_recurrence(terms: Sequence, order_bound: int) -> LrsInstance:
    """Minimal-order annihilating recurrence (Berlekamp-Massey over the
    exact scalar field), given at least 2*order_bound + 2 leading terms."""
    if len(terms) < 2 * order_bound + 2:
        raise InvalidInputError("not enough terms for reliable reconstruction")
    terms = [_S(t) for t in terms]
    # Berlekamp-Massey over a field
    C = [_S(1)]
    B = [_S(1)]
    L, m, b = 0, 1, _S(1)
    for n in range(len(terms)):
        delta = terms[n]
        for i in range(1, L + 1):
            delta = delta + C[i] * terms[n - i]
        if scalar_sign(delta) == 0:
            m += 1
            continue
        T = list(C)
        coef = delta * _inv_scalar(b)
        while len(C) < len(B) + m:
            C.append(_S(0))
        for i in range(len(B)):
            C[i + m] = C[i + m] - coef * B[i]
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, delta, 1
        else:
            m += 1
    if L == 0:
        # identically zero prefix: represent as the zero sequence of order 1
        return LrsInstance(LinearRecurrence([_S(1)]), [_S(0)])
    while len(C) < L + 1:
        C.append(_S(0))
    # u_n = -sum C[i] u_{n-i}: recurrence coefficients a_i = -C[L - i]
    a = [-C[L - i] for i in range(L)]
    if scalar_sign(a[0]) == 0:
        raise InvalidInputError("minimal recurrence has a zero trailing coefficient")
    return LrsInstance(LinearRecurrence(a), terms[:L])


def _inv_scalar(x: Scalar) -> Scalar:
    if isinstance(x, QuadraticSurd):
        return x.inverse()
    return _S(1 / Fraction(x))


def lrs_sum(u: LrsInstance, v: LrsInstance) -> LrsInstance:
    """Pointwise sum as an LRS of order <= order(u) + order(v)."""
    bound = u.order + v.order
    n = 2 * bound + 2
    su, sv = u.sequence(n), v.sequence(n)
    return minimal_recurrence([a + b for a, b in zip(su, sv)], bound)


def lrs_product(u: LrsInstance, v: LrsInstance) -> LrsInstance:
    """Pointwise product as an LRS of order <= order(u) * order(v)."""
    bound = u.order * v.order
    n = 2 * bound + 2
    su, sv = u.sequence(n), v.sequence(n)
    return minimal_recurrence([a * b for a, b in zip(su, sv)], bound)


# -- degenerate spectra ----------------------------------------------------------------


def degeneracy_order(inst: LrsInstance) -> Optional[int]:
    """Smallest k such that every unit ratio of characteristic roots is a
    k-th root of unity; None for non-degenerate instances."""
    spec = instance_spectrum(inst)
    orders = []
    reals = spec["real"]
    pairs = spec["pairs"]
    for re, im, _ in pairs:
        k = unit_angle_order(re, im)
        if k is None:
            # scaled pair angle irrational: check ratios between pairs too
            continue
        orders.append(k)
    # +-rho real pairs force order 2
    for i in range(len(reals)):
        for j in range(i + 1, len(reals)):
            if scalar_sign(reals[i][0] + reals[j][0]) == 0:
                orders.append(2)
    # two pairs with equal modulus: ratio order within the tower
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            ri, ii, _ = pairs[i]
            rj, ij, _ = pairs[j]
            if scalar_sign((ri * ri + ii * ii) - (rj * rj + ij * ij)) == 0:
                # gamma_i * conj(gamma_j) up to |.|^2: unit part order
                pr = ri * rj + ii * ij
                pi = ii * rj - ri * ij
                k = unit_angle_order(pr, pi)
                if k is not None:
                    orders.append(k)
    if not orders:
        return None
    return math.lcm(*orders)


def degenerate_decompose(inst: LrsInstance, k: int) -> list[LrsInstance]:
    """Split a degenerate LRS into 2k interleaved subsequences
    w^(j)_m = u_{2k m + j}; each has only real characteristic roots."""
    detected = degeneracy_order(inst)
    if detected is None or k != detected:
        raise InvalidInputError(
            f"requested k={k} does not match the detected degeneracy {detected}"
        )
    step = 2 * k
    bound = inst.order
    terms = inst.sequence(step * (2 * bound + 2))
    out = []
    for j in range(step):
        sub = terms[j::step]
        out.append(minimal_recurrence(sub[: 2 * bound + 2], bound))
    return out
