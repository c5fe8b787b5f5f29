"""Exact integer linear algebra shared by the counting backends."""

from __future__ import annotations

from math import comb
from typing import Sequence


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss fraction-free elimination.

    The empty matrix has determinant 1.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for r in range(k + 1, n):
            row_r = m[r]
            f = row_r[k]
            for c in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_r[c] = (row_r[c] * pivot - f * row_k[c]) // prev
            row_r[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]
