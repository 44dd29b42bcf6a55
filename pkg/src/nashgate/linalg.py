"""Exact integer/rational matrix helpers.

Matrices are tuples (or lists) of rows. Nothing here ever touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def determinant(m: Matrix) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m: Matrix) -> list[int]:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def inverse(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan over the rationals.

    Raises ZeroDivisionError if the matrix is singular.
    """
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def adjugate(m: Matrix) -> tuple[tuple[int, ...], ...]:
    """Integer adjugate, computed as det(M) * M^-1."""
    d = determinant(m)
    inv = inverse(m)
    out = []
    for row in inv:
        scaled = [x * d for x in row]
        assert all(x.denominator == 1 for x in scaled)
        out.append(tuple(int(x) for x in scaled))
    return tuple(out)


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def solve(m: Matrix, rhs: Sequence[int]) -> tuple[Fraction, ...]:
    """Unique exact solution of ``m x = rhs`` for an invertible integer matrix."""
    if len(rhs) != len(m):
        raise ValueError(f"dimension mismatch: matrix is {len(m)}x{len(m)}, rhs has {len(rhs)} entries")
    return tuple(matvec(inverse(m), [Fraction(x) for x in rhs]))
