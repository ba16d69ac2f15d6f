"""Exact linear algebra over the rationals.

Row reduction goes through sympy's `Matrix.rref` on `Rational` entries; results come back as `Fraction`s. The
square solves of vertex enumeration run many thousands of times and use fraction-free Bareiss elimination on
integer rows instead.
"""
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

import sympy

Row = List[Fraction]


def to_fractions(rows: Sequence[Sequence]) -> List[Row]:
    return [[Fraction(v) for v in row] for row in rows]


def _rational(v: Fraction) -> sympy.Rational:
    return sympy.Rational(v.numerator, v.denominator)


def _fraction(v: sympy.Rational) -> Fraction:
    return Fraction(int(v.p), int(v.q))


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped.

    Only the first `ncols` columns are pivoted on; the remaining ones ride along.
    """
    M = to_fractions(rows)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M or ncols == 0:
        return [], []
    matrix = sympy.Matrix([[_rational(v) for v in row] for row in M])
    reduced, pivots = matrix.rref(pivots=True)
    pivots = [c for c in pivots if c < ncols]
    reduced_rows = [[_fraction(reduced[i, j]) for j in range(matrix.cols)] for i in range(len(pivots))]
    return reduced_rows, pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[Row]:
    """One solution of A x = b (free variables set to zero), or None when inconsistent."""
    n = len(A[0]) if A else 0
    augmented = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(augmented, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def integer_rows(A: Sequence[Sequence], b: Sequence) -> Tuple[List[List[int]], List[int]]:
    """Scale each equation by the lcm of its denominators."""
    int_rows, int_rhs = [], []
    for row, rhs in zip(A, b):
        entries = [Fraction(v) for v in row] + [Fraction(rhs)]
        scale = lcm(*(v.denominator for v in entries))
        int_rows.append([int(v * scale) for v in entries[:-1]])
        int_rhs.append(int(entries[-1] * scale))
    return int_rows, int_rhs


def bareiss_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Row]:
    """Solve a square integer system by fraction-free elimination; None when singular."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return None
            M[k], M[swap] = M[swap], M[k]
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            lead = Mi[k]
            for j in range(k + 1, n + 1):
                Mi[j] = (Mi[j] * pivot - lead * Mk[j]) // prev
            Mi[k] = 0
        prev = pivot
    x: Row = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n]) - sum((M[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = acc / M[i][i]
    return x
