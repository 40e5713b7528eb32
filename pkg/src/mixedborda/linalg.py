"""Exact integer/rational linear algebra on plain nested lists."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Number = int | Fraction


class SingularSystem(ArithmeticError):
    pass


def det_exact(m: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination.

    The empty matrix has determinant 1.
    """
    n = len(m)
    a = [list(map(int, row)) for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
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
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def _integer_rows(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[int]]:
    rows = []
    for ra, rb in zip(a, b):
        row = [Fraction(x) for x in ra] + [Fraction(x) for x in rb]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    return rows


def solve_exact(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    """Solve ``a @ x = b`` exactly for a square, non-singular ``a``.

    ``b`` holds one row per equation and may have several columns.  Rows are
    scaled to integers, reduced with Bareiss' fraction-free elimination and
    back-substituted over the rationals.
    """
    n = len(a)
    if n == 0:
        return []
    k = len(b[0])
    m = _integer_rows(a, b)
    width = n + k
    prev = 1
    for c in range(n):
        if m[c][c] == 0:
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    m[c], m[i] = m[i], m[c]
                    break
            else:
                raise SingularSystem("coefficient matrix is singular")
        pivot = m[c][c]
        row_c = m[c]
        for i in range(c + 1, n):
            row_i = m[i]
            f = row_i[c]
            if f == 0:
                if prev != pivot:
                    for j in range(c + 1, width):
                        row_i[j] = (pivot * row_i[j]) // prev
                continue
            for j in range(c + 1, width):
                row_i[j] = (pivot * row_i[j] - f * row_c[j]) // prev
            row_i[c] = 0
        prev = pivot
    x: list[list[Fraction]] = [[Fraction(0)] * k for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = m[i]
        for col in range(k):
            acc = Fraction(row[n + col])
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * x[j][col]
            x[i][col] = acc / row[i]
    return x


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[Number]]:
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in zip(*b)] for row in a]
