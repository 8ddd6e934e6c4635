"""Small exact linear algebra over Q.

Rows are scaled to integers first, then eliminated with Bareiss' fraction-free
scheme so intermediate entries stay integral.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    out, scales = [], []
    for row in rows:
        fr = [Fraction(v) for v in row]
        s = _lcm(v.denominator for v in fr)
        out.append([int(v * s) for v in fr])
        scales.append(s)
    return out, scales


def bareiss_det(m: Sequence[Sequence]) -> Fraction:
    a, scales = _integer_rows(m)
    n = len(a)
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
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    det = Fraction(sign * a[n - 1][n - 1])
    for s in scales:
        det /= s
    return det


def solve(m: Sequence[Sequence], rhs: Sequence[Sequence]) -> Matrix:
    """Solve m @ X = rhs exactly; rhs is a list of columns stacked as rows of width k."""
    n = len(m)
    k = len(rhs[0])
    aug_rows = [list(m[i]) + list(rhs[i]) for i in range(n)]
    a, _ = _integer_rows(aug_rows)
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        for i in range(n):
            if i == col:
                continue
            for j in range(n + k):
                if j != col:
                    a[i][j] = (a[i][j] * a[col][col] - a[i][col] * a[col][j]) // prev
            a[i][col] = 0
        prev = a[col][col]
    # every row is now diagonal with common pivot ``prev`` on the left block
    return [[Fraction(a[i][n + j], a[i][i]) for j in range(k)] for i in range(n)]


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return solve(m, ident)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[sum((Fraction(a[i][t]) * b[t][j] for t in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list[Fraction]:
    return [sum((Fraction(v[i]) * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(len(m[0]))]
