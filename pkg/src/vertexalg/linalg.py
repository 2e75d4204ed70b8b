"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  Rank is computed by fraction-free
(Bareiss) elimination on integer matrices after clearing denominators;
reduced row echelon form over Q is used where explicit solutions or basis
vectors are needed.  Sizes here are small (graded blocks), so no sparse
machinery is required.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Q0 = Fraction(0)
Q1 = Fraction(1)


def _clear_denominators(matrix):
    out = []
    for row in matrix:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        out.append([int(v * denom) for v in row])
    return out


def rank(matrix):
    """Rank via fraction-free Bareiss elimination."""
    if not matrix or not matrix[0]:
        return 0
    m = _clear_denominators([list(r) for r in matrix])
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def rref(matrix):
    """Reduced row echelon form over Q; returns (rref rows, pivot columns)."""
    m = [list(map(Fraction, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Q1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(matrix, ncols):
    """Basis of the right kernel of ``matrix`` (rows = equations)."""
    if not matrix:
        return [[Q1 if j == i else Q0 for j in range(ncols)]
                for i in range(ncols)]
    m, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Q0] * ncols
        vec[fc] = Q1
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def column_rank(columns):
    """Rank of a list of column vectors."""
    if not columns:
        return 0
    return rank([list(col) for col in columns])  # row space rank = column rank


def in_span(columns, vector):
    """True iff ``vector`` lies in the span of ``columns``."""
    if all(v == 0 for v in vector):
        return True
    if not columns:
        return False
    base = column_rank(columns)
    return column_rank(list(columns) + [list(vector)]) == base


def solve(matrix, rhs):
    """One solution x of matrix @ x = rhs, or None when inconsistent.

    ``matrix`` is rows x cols; free variables are set to zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(map(Fraction, matrix[i])) + [Fraction(rhs[i])]
           for i in range(rows)]
    m, pivots = rref(aug)
    for r in range(len(m)):
        if all(v == 0 for v in m[r][:cols]) and m[r][cols]:
            return None
    x = [Q0] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = m[r][cols]
    return x


def compose(a_cols, b_cols):
    """Columns of A@B given columns of A and of B (B's columns in A's domain)."""
    out = []
    for bcol in b_cols:
        n = len(a_cols[0]) if a_cols else len(bcol)
        col = [Q0] * n
        for j, coeff in enumerate(bcol):
            if coeff:
                acol = a_cols[j]
                for i, v in enumerate(acol):
                    if v:
                        col[i] += coeff * v
        out.append(col)
    return out
