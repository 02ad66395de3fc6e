"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction` (ints are
accepted and promoted).  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss fraction-free elimination.

    Over Q every division in the Bareiss recurrence is exact, so the
    intermediate entries stay as small as the minors they represent.
    """
    a = as_matrix(rows)
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    a = as_matrix(rows)
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def solve(rows: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve ``A x = b`` for square invertible ``A`` by Gauss-Jordan."""
    a = as_matrix(rows)
    n = len(a)
    b = [Fraction(x) for x in rhs]
    if len(b) != n or any(len(r) != n for r in a):
        raise ValueError("solve needs a square system")
    aug = [row + [bi] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def inverse(rows: Sequence[Sequence]) -> Matrix:
    a = as_matrix(rows)
    n = len(a)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(a, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    if a and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*as_matrix(a))]
