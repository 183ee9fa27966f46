"""Small matrix helpers and exact rank."""
from __future__ import annotations

import math
from fractions import Fraction


class SingularMatrix(ValueError):
    pass


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def inv2(m):
    d = det2(m)
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


def matmul2(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


def matvec2(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def from_columns(u, v):
    return ((u[0], v[0]), (u[1], v[1]))


def columns(m):
    return (m[0][0], m[1][0]), (m[0][1], m[1][1])


IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank_exact(rows) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            a = m[r][col]
            m[r] = [(p * m[r][c] - a * m[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_numeric(rows, eps: float) -> int:
    m = [[complex(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = max(range(rank, len(m)), key=lambda r: abs(m[r][col]), default=None)
        if pivot is None or abs(m[pivot][col]) <= eps:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][col] / m[rank][col]
            m[r] = [m[r][c] - f * m[rank][c] for c in range(ncols)]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(rows, field) -> int:
    if field.name == "exact":
        return rank_exact(rows)
    return rank_numeric(rows, field.eps)
