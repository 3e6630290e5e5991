"""Mahalanobis neighbourhoods: positive-definiteness certification, exact
support-function maximization over the ball, and the derived sequence whose
sign encodes the ball-wide term inequality.

The Cholesky-like factor G with S = G^T G is never materialized: every
formula that would use G^{-1} reduces to S^{-1}, because the sum of squares
of the mapped coordinates is h^T S^{-1} h.  That keeps all derived data
inside the rational/surd tower.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .algebraic import AlgebraicReal
from .recurrences import LrsInstance, companion, minimal_recurrence
from .scalars import (
    InvalidInputError,
    Scalar,
    as_exact,
    scalar_sign,
    scalar_sqrt,
)


class Neighbourhood:
    """Closed ball {c' : (c'-c)^T S (c'-c) <= 1} around an initialisation.

    Carries the exact inverse and an LDL^T certificate of positive
    definiteness (all pivots strictly positive).
    """

    def __init__(self, S: Sequence[Sequence]):
        S = [[as_exact(x) for x in row] for row in S]
        n = len(S)
        if any(len(row) != n for row in S):
            raise InvalidInputError("S must be square")
        if not linalg.is_symmetric(S):
            raise InvalidInputError("S must be symmetric")
        self.S = S
        self.L, self.D = linalg.ldl(S)  # raises when not positive definite
        self.S_inv = linalg.inverse(S)
        self.dim = n

    @staticmethod
    def scaled_identity(dim: int, factor) -> "Neighbourhood":
        f = as_exact(factor)
        return Neighbourhood(
            [[f if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
        )

    def scale(self, factor) -> "Neighbourhood":
        f = as_exact(factor)
        return Neighbourhood([[f * x for x in row] for row in self.S])

    def contains(self, center: Sequence, point: Sequence) -> bool:
        d = [as_exact(p) - as_exact(c) for p, c in zip(point, center)]
        q = linalg.vec_dot(d, linalg.mat_vec(self.S, d))
        return scalar_sign(q - 1) <= 0

    def boundary_distance_sq(self, center: Sequence, point: Sequence) -> Scalar:
        d = [as_exact(p) - as_exact(c) for p, c in zip(point, center)]
        return linalg.vec_dot(d, linalg.mat_vec(self.S, d))

    def ball_max_sq(self, h: Sequence) -> Scalar:
        """h^T S^{-1} h: the squared maximum of <h, d> over the ball."""
        h = [as_exact(x) for x in h]
        if len(h) != self.dim:
            raise InvalidInputError("dimension mismatch")
        return linalg.vec_dot(h, linalg.mat_vec(self.S_inv, h))

    def ball_max(self, h: Sequence) -> AlgebraicReal:
        """max over the ball of <h, d>, exactly (a square root)."""
        v = self.ball_max_sq(h)
        s = scalar_sqrt(v)
        if s is not None:
            return AlgebraicReal.of(s)
        return AlgebraicReal.of(v).sqrt()

    def __repr__(self):
        return f"Neighbourhood(dim={self.dim})"


def validate(S: Sequence[Sequence]) -> Neighbourhood:
    """Certify S as a neighbourhood matrix (symmetric positive definite)."""
    return Neighbourhood(S)


def row_functionals(inst: LrsInstance, count: int) -> list:
    """Rows h_n^T = e_1^T A^n for n = 0..count-1."""
    A = companion(inst.recurrence)
    k = inst.order
    row = [as_exact(int(j == 0)) for j in range(k)]
    out = [list(row)]
    for _ in range(count - 1):
        row = [linalg.vec_dot(row, [A[i][j] for i in range(k)]) for j in range(k)]
        out.append(list(row))
    return out


def derived_sequence(inst: LrsInstance, nb: Neighbourhood) -> LrsInstance:
    """The sequence v_n = (e_1^T A^n c)^2 - h_n^T S^{-1} h_n, as an LRS.

    v_n >= 0 together with u_n >= 0 is exactly 'the n-th term is
    nonnegative across the whole ball'.  Order is at most order(u)^2;
    the minimal annihilating recurrence is recovered from leading terms.
    """
    k = inst.order
    bound = k * k
    count = 2 * bound + 2
    rows = row_functionals(inst, count)
    terms = []
    for h in rows:
        un = linalg.vec_dot(h, inst.init)
        terms.append(un * un - nb.ball_max_sq(h))
    return minimal_recurrence(terms, bound)


def prefix_check(inst: LrsInstance, nb: Neighbourhood, N: int) -> Optional[int]:
    """Smallest n <= N where the term inequality u_n >= ball_max fails,
    or None.  Exact: compares u_n against the squared radius."""
    A = companion(inst.recurrence)
    k = inst.order
    h = [as_exact(int(j == 0)) for j in range(k)]
    for n in range(N + 1):
        un = linalg.vec_dot(h, inst.init)
        if scalar_sign(un) < 0:
            return n
        if scalar_sign(un * un - nb.ball_max_sq(h)) < 0:
            return n
        h = [linalg.vec_dot(h, [A[i][j] for i in range(k)]) for j in range(k)]
    return None
