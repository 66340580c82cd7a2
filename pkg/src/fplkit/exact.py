"""Fraction-free (Bareiss) elimination over the integers.

Rational inputs are first scaled row by row to integer rows; the row scales
are divided back out at the end.  Every intermediate quantity stays an exact
integer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


def _integer_rows(rows: Sequence[Sequence[Rational]]) -> tuple[list[list[int]], list[int]]:
    out, scales = [], []
    for row in rows:
        fr = [Fraction(x) for x in row]
        scale = math.lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * scale) for x in fr])
        scales.append(scale)
    return out, scales


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(matrix: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant of a square matrix with integer or rational entries."""
    ints, scales = _integer_rows(matrix)
    return Fraction(bareiss_det(ints), math.prod(scales))


def solve(matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; raises :class:`SingularMatrix`."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    m, _ = _integer_rows(aug)
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                raise SingularMatrix(f"no pivot in column {k}")
            m[k], m[swap] = m[swap], m[k]
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x
