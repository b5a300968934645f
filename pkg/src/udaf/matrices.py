"""Exact integer matrix helpers.

Matrices are tuples of row tuples of Python ints, so they are hashable,
immutable and never overflow.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix rows")
    return m


def is_square(m: Matrix) -> bool:
    return all(len(row) == len(m) for row in m)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((0,) * n for _ in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence[int], m: Matrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    if not m:
        return ()
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def matpow(m: Matrix, k: int) -> Matrix:
    result = identity(len(m))
    base = m
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(m: Matrix) -> int:
    return sum(m[i][i] for i in range(len(m)))


def det(m: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def signed_det(m: Matrix) -> int:
    """(-1)^size * det, the quantity every strong-equivalence move preserves."""
    return (-1) ** len(m) * det(m)


def permute(m: Matrix, perm: Sequence[int]) -> Matrix:
    """Conjugate by a 0-based bijection: entry (v, w) moves to (perm[v], perm[w])."""
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for v in range(n):
        for w in range(n):
            out[perm[v]][perm[w]] = m[v][w]
    return as_matrix(out)


def format_matrix(m: Matrix) -> str:
    if not m:
        return ""
    width = max(len(str(x)) for row in m for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in m)
