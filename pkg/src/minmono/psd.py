"""Positive-semidefiniteness decisions: exact over the rationals, or numeric.

The exact test is fraction-free symmetric Gaussian elimination (Bareiss):
a negative pivot refutes, a zero pivot is admissible only if its whole row
is zero (that row is then discarded), and exhausting all rows proves PSD.
Clearing denominators first keeps everything in integer arithmetic.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

__all__ = ["exact_psd_check", "numeric_min_eigenvalue"]


def exact_psd_check(matrix) -> bool:
    """Decide exactly whether a symmetric rational matrix is PSD.

    `matrix` is a square nested sequence of Fractions/ints.  Raises on
    non-symmetric input.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix must be symmetric")
    scale = lcm(*(x.denominator for row in m for x in row)) if n else 1
    b = [[int(x * scale) for x in row] for row in m]

    active = list(range(n))
    prev_pivot = 1
    while active:
        k = active[0]
        pivot = b[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(b[k][j] != 0 for j in active):
                return False
            active.pop(0)  # zero row: drop it, previous pivot unchanged
            continue
        rest = active[1:]
        for ii, i in enumerate(rest):
            bik = b[i][k]
            row_i = b[i]
            row_k = b[k]
            for j in rest[ii:]:
                val = (row_i[j] * pivot - bik * row_k[j]) // prev_pivot
                b[i][j] = val
                b[j][i] = val
        prev_pivot = pivot
        active = rest
    return True


def numeric_min_eigenvalue(matrix) -> float:
    """Smallest eigenvalue of a symmetric matrix in double precision."""
    arr = np.array(matrix, dtype=np.float64)
    return float(np.linalg.eigvalsh(arr)[0])
