"""
Harmonia Exact Linear Algebra
Determinants, echelon forms, kernels and linear solves over ℤ and ℚ.

Integer matrices go through fraction-free elimination (Bareiss for the
determinant, content-reduced row operations for echelon forms); anything with
a non-integral entry falls back to elimination over Fraction.
"""
import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np

# Initialize logger
logger = logging.getLogger(__name__)


def as_matrix(rows) -> np.ndarray:
    """Copy rows into a 2-D numpy object array of Fractions."""
    if not len(rows):
        return np.empty((0, 0), dtype=object)
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def _is_integral(matrix: np.ndarray) -> bool:
    return all(x.denominator == 1 for x in matrix.flat)


def _bareiss(m: List[List[int]]) -> int:
    n = len(m)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def _rational_det(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    result = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] / m[k][k]
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
    return result


def det(rows) -> Fraction:
    """
    Exact determinant of a square matrix.

    Args:
        rows: Square matrix of ints or Fractions (nested sequences or numpy array)

    Returns:
        The determinant as a Fraction (integral for integer input)
    """
    matrix = as_matrix(rows)
    n, cols = matrix.shape
    if n != cols:
        raise ValueError(f"Determinant of a non-square {n}×{cols} matrix")
    if n == 0:
        return Fraction(1)
    if _is_integral(matrix):
        return Fraction(_bareiss([[int(x) for x in row] for row in matrix]))
    logger.debug(f"Rational elimination for a {n}×{n} determinant")
    return _rational_det([list(row) for row in matrix])


def _integer_rows(matrix: np.ndarray) -> List[List[int]]:
    rows = []
    for row in matrix:
        scale = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([int(x * scale) for x in row])
    return rows


def _primitive(vector: Sequence[int]) -> List[int]:
    content = reduce(gcd, vector, 0)
    if not content:
        return list(vector)
    # first nonzero entry positive
    lead = next(x for x in vector if x)
    if lead < 0:
        content = -content
    return [x // content for x in vector]


def echelon(rows) -> Tuple[List[List[int]], List[int]]:
    """
    Fraction-free reduced echelon form.

    Every row is scaled to integers, eliminated with integer row operations and
    divided by its content. Pivots are chosen at the leftmost nonzero column.

    Returns:
        (nonzero rows, pivot columns); each pivot column is zero outside its row
    """
    matrix = as_matrix(rows)
    work = _integer_rows(matrix)
    n_cols = matrix.shape[1] if matrix.size else 0
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                factor = work[i][col]
                work[i] = _primitive([p[col] * a - factor * b for a, b in zip(work[i], p)])
        work[r] = _primitive(p)
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows) -> int:
    return len(echelon(rows)[1])


def nullspace(rows, n_cols: Optional[int] = None) -> List[List[int]]:
    """
    Basis of the right kernel as primitive integer vectors.

    One vector per free column, in increasing column order, scaled so that its
    first nonzero entry is positive.
    """
    matrix = as_matrix(rows)
    width = matrix.shape[1] if len(rows) else (n_cols or 0)
    if not len(rows):
        return [[int(i == j) for j in range(width)] for i in range(width)]
    reduced, pivots = echelon(matrix)
    pivot_set = set(pivots)
    scale = reduce(lcm, (row[c] for row, c in zip(reduced, pivots)), 1)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vector = [0] * width
        vector[free] = scale
        for row, c in zip(reduced, pivots):
            vector[c] = -row[free] * scale // row[c]
        basis.append(_primitive(vector))
    return basis


def solve(rows, rhs) -> Optional[List[Fraction]]:
    """
    One exact solution of A·x = b, free variables set to 0.

    Returns:
        The solution, or None when the system is inconsistent
    """
    matrix = as_matrix(rows)
    augmented = [list(row) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    width = matrix.shape[1]
    reduced, pivots = echelon(augmented)
    if pivots and pivots[-1] == width:
        return None
    solution = [Fraction(0)] * width
    for row, c in zip(reduced, pivots):
        solution[c] = Fraction(row[width], row[c])
    return solution

