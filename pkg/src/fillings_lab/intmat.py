"""Exact integer matrix determinants (fraction-free Bareiss elimination)."""

from __future__ import annotations


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix, exactly.

    Bareiss elimination keeps every intermediate value an integer, so there
    is no precision loss for the large determinants produced by Goeritz
    matrices and linking presentations.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in rows]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
