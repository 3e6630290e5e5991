"""Exact nonnegativity of linear and quadratic functionals over an
ellipsoid.

The quadratic test uses the S-procedure, which is loss-free for a single
ellipsoid constraint: q >= 0 on the ball iff the homogenized pencil
H(tau) = M_q + tau M_g is positive semidefinite for some tau >= 0.  The
pencil is affine in tau, so the feasible tau-set is a closed interval
whose endpoints are roots of principal minors; testing PSD exactly at
those algebraic roots plus rational midpoints decides the question.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from . import intpoly as ip
from . import linalg
from .algebraic import AlgebraicReal
from .neighbourhoods import Neighbourhood
from .scalars import (
    InvalidInputError,
    QuadraticSurd,
    Scalar,
    as_exact,
    scalar_is_rational,
    scalar_sign,
)

Poly = list  # Fraction coefficients, constant first


def _p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def _p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _p_neg(a: Poly) -> Poly:
    return [-x for x in a]


def _p_trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_det(m: list, rows: tuple, cols: tuple) -> Poly:
    """Determinant of a square submatrix with polynomial entries."""
    if not rows:
        return [Fraction(1)]
    r = rows[0]
    out: Poly = []
    for idx, c in enumerate(cols):
        minor = _poly_det(m, rows[1:], cols[:idx] + cols[idx + 1 :])
        term = _p_mul(m[r][c], minor)
        out = _p_add(out, term if idx % 2 == 0 else _p_neg(term))
    return out


class BallQuadratic:
    """q(x) = x^T A x + 2 b^T x + c0 restricted to a Mahalanobis ball."""

    def __init__(self, A, b, c0, nb: Neighbourhood, center):
        self.A = [[Fraction(x) for x in row] for row in A]
        self.b = [Fraction(x) for x in b]
        self.c0 = Fraction(c0)
        self.nb = nb
        self.center = [Fraction(x) for x in center]
        if any(not scalar_is_rational(x) for row in nb.S for x in row):
            raise InvalidInputError("quadratic ball tests need a rational S")
        self.n = len(self.b)

    def value_at(self, x: Sequence) -> Scalar:
        xs = [as_exact(v) for v in x]
        acc = as_exact(self.c0)
        for i in range(self.n):
            acc = acc + 2 * self.b[i] * xs[i]
            for j in range(self.n):
                acc = acc + self.A[i][j] * xs[i] * xs[j]
        return acc

    def _pencil(self) -> list:
        """H(tau) entries as Fraction polynomials in tau.

        H(tau) = [[A + tau S, b - tau S c], [(b - tau S c)^T,
                  c0 + tau (c^T S c - 1)]].
        """
        S = [[Fraction(x) for x in row] for row in self.nb.S]
        c = self.center
        n = self.n
        Sc = [sum(S[i][j] * c[j] for j in range(n)) for i in range(n)]
        cSc = sum(c[i] * Sc[i] for i in range(n))
        H = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(_p_trim([self.A[i][j], S[i][j]]))
            row.append(_p_trim([self.b[i], -Sc[i]]))
            H.append(row)
        last = [_p_trim([self.b[j], -Sc[j]]) for j in range(n)]
        last.append(_p_trim([self.c0, cSc - 1]))
        H.append(last)
        return H

    def nonnegative_on_ball(self) -> bool:
        """Exact decision of q(x) >= 0 for every x in the ball."""
        H = self._pencil()
        m = self.n + 1
        idx = tuple(range(m))
        minors = []
        for size in range(1, m + 1):
            for sub in itertools.combinations(idx, size):
                minors.append(_p_trim(_poly_det(H, sub, sub)))
        candidates: list = [Fraction(0)]
        cuts: list[Fraction] = []
        alg_candidates: list[AlgebraicReal] = []
        for p in minors:
            p = _p_trim(p)
            if len(p) <= 1:
                continue
            ipoly = ip.from_fractions([Fraction(x) for x in p])
            sf = ip.squarefree_part(ipoly)
            for lo, hi in ip.isolate_squarefree(sf):
                if hi < 0:
                    continue
                if lo == hi:
                    cuts.append(lo)
                    candidates.append(lo)
                else:
                    root = AlgebraicReal(sf, lo, hi)
                    if root.sign() >= 0:
                        alg_candidates.append(root)
                        root.refine_to(Fraction(1, 1024))
                        cuts.append(root.hi)
        cuts = sorted(set(c for c in cuts if c >= 0))
        prev = Fraction(0)
        for c in cuts:
            candidates.append((prev + c) / 2)
            prev = c
        candidates.append(prev + 1)
        for tau in candidates:
            if tau < 0:
                continue
            if self._psd_at_rational(H, tau):
                return True
        for root in alg_candidates:
            if self._psd_at_algebraic(H, root):
                return True
        return False

    def _psd_at_rational(self, H, tau: Fraction) -> bool:
        m = len(H)
        M = [[_eval_poly(H[i][j], tau) for j in range(m)] for i in range(m)]
        return _psd_rational(M)

    def _psd_at_algebraic(self, H, tau: AlgebraicReal) -> bool:
        m = len(H)
        for size in range(1, m + 1):
            for sub in itertools.combinations(range(m), size):
                p = _p_trim(_poly_det(H, sub, sub))
                if not p:
                    continue
                ipoly = ip.from_fractions([Fraction(x) for x in p])
                if ipoly and tau.sign_of_poly(ipoly) < 0:
                    return False
        return True


def _eval_poly(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _psd_rational(M) -> bool:
    """Exact PSD test for a rational symmetric matrix (all principal
    minors nonnegative)."""
    m = len(M)
    for size in range(1, m + 1):
        for sub in itertools.combinations(range(m), size):
            if _det_rational([[M[i][j] for j in sub] for i in sub]) < 0:
                return False
    return True


def _det_rational(M) -> Fraction:
    n = len(M)
    M = [row[:] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / M[col][col]
            M[r] = [M[r][j] - f * M[col][j] for j in range(n)]
    return det


# -- linear functionals over the ball -----------------------------------------------


class BallLinear:
    """L(x) = g^T x + d over the ball; exact min sign and tangency point."""

    def __init__(self, g, d, nb: Neighbourhood, center):
        self.g = [as_exact(x) for x in g]
        self.d = as_exact(d)
        self.nb = nb
        self.center = [as_exact(x) for x in center]

    def center_value(self) -> Scalar:
        return linalg.vec_dot(self.g, self.center) + self.d

    def radius_sq(self) -> Scalar:
        return self.nb.ball_max_sq(self.g)

    def min_sign(self) -> int:
        """Sign of min over the ball of L: exact."""
        lc = self.center_value()
        rsq = self.radius_sq()
        if scalar_sign(lc) < 0:
            return -1
        return scalar_sign(lc * lc - rsq)

    def tangency_point(self) -> list:
        """The unique ball minimizer when min L = 0 (requires g != 0)."""
        from .scalars import scalar_sqrt

        rsq = self.radius_sq()
        if scalar_sign(rsq) == 0:
            raise InvalidInputError("zero functional has no tangency point")
        root = scalar_sqrt(rsq)
        if root is None:
            raise InvalidInputError("tangency radius outside the surd tower")
        Sg = linalg.mat_vec(self.nb.S_inv, self.g)
        inv = root.inverse() if isinstance(root, QuadraticSurd) else 1 / root
        return [c - x * inv for c, x in zip(self.center, Sg)]
