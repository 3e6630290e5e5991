"""Small exact linear algebra over the scalar tower (Fraction/QuadraticSurd).

Matrices are lists of lists of scalars; everything is dense and exact.
Sizes stay tiny (order <= 5, derived systems <= 25), so plain Gaussian
elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from .scalars import InvalidInputError, scalar_sign

Matrix = list
Vector = list


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return out


def vec_dot(u: Vector, v: Vector):
    acc = u[0] * v[0]
    for t in range(1, len(v)):
        acc = acc + u[t] * v[t]
    return acc


def mat_pow(a: Matrix, n: int) -> Matrix:
    out = identity(len(a))
    base = a
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def solve(a: Matrix, b: Vector) -> Vector:
    """Solve a x = b exactly; raises on singular systems."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if scalar_sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            raise InvalidInputError("singular linear system")
        m[col], m[piv] = m[piv], m[col]
        inv = _inv(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and scalar_sign(m[r][col]) != 0:
                f = m[r][col]
                m[r] = [m[r][j] - f * m[col][j] for j in range(n + 1)]
    return [m[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(a, e))
    return transpose(cols)


def _inv(x):
    from .scalars import QuadraticSurd

    if isinstance(x, QuadraticSurd):
        return x.inverse()
    return 1 / Fraction(x)


def determinant(a: Matrix):
    """Exact determinant by fraction-free-ish elimination over the tower."""
    n = len(a)
    m = [list(row) for row in a]
    det = Fraction(1)
    sign = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if scalar_sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        det = det * m[col][col]
        inv = _inv(m[col][col])
        for r in range(col + 1, n):
            if scalar_sign(m[r][col]) != 0:
                f = m[r][col] * inv
                m[r] = [m[r][j] - f * m[col][j] for j in range(n)]
    return det * sign


def kron(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    out = []
    for i in range(na):
        for k in range(nb):
            row = []
            for j in range(na):
                for l in range(nb):
                    row.append(a[i][j] * b[k][l])
            out.append(row)
    return out


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(
        scalar_sign(a[i][j] - a[j][i]) == 0 for i in range(n) for j in range(i + 1, n)
    )


def ldl(a: Matrix) -> tuple[Matrix, Vector]:
    """LDL^T of a symmetric matrix; raises with the failing leading minor
    index when a pivot is not strictly positive."""
    n = len(a)
    L = identity(n)
    D: Vector = [Fraction(0)] * n
    for j in range(n):
        d = a[j][j]
        for k in range(j):
            d = d - L[j][k] * L[j][k] * D[k]
        if scalar_sign(d) <= 0:
            raise InvalidInputError(
                f"matrix is not positive definite: leading minor {j + 1}"
            )
        D[j] = d
        for i in range(j + 1, n):
            v = a[i][j]
            for k in range(j):
                v = v - L[i][k] * L[j][k] * D[k]
            L[i][j] = v * _inv(d)
    return L, D
