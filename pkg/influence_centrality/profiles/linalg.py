"""Small dense linear algebra: exact rational elimination and a numpy float path."""

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..utils.errors import SingularBasisError

PIVOT_TOLERANCE = 1e-9

Matrix = List[List[Fraction]]


def to_rational(rows: Sequence[Sequence]) -> Matrix:
    """Copy a matrix with every entry converted to Fraction."""
    return [[Fraction(x) for x in row] for row in rows]


def _eliminate(a: Matrix, cols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form in place; returns (matrix, pivot columns)."""
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        lead = a[row][col]
        a[row] = [x / lead for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a, pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a matrix with rational entries."""
    if not rows:
        return 0
    _, pivots = _eliminate(to_rational(rows), len(rows[0]))
    return len(pivots)


def solve_rational(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """
    Exact solution of the square system a x = b.

    Raises:
        SingularBasisError: a is singular
    """
    size = len(a)
    augmented = [list(row) + [rhs] for row, rhs in zip(to_rational(a), to_rational([b])[0])]
    reduced, pivots = _eliminate(augmented, size)
    if len(pivots) < size:
        raise SingularBasisError(f"Matrix has rank {len(pivots)} < {size}")
    return [reduced[i][size] for i in range(size)]


def solve_float(a: Sequence[Sequence], b: Sequence) -> Tuple[np.ndarray, float]:
    """
    Float solution via LU with partial pivoting.

    Returns:
        (solution, residual 2-norm of a x - b)

    Raises:
        SingularBasisError: numerical rank below size at the pivot tolerance
    """
    matrix = np.asarray(a, dtype=np.float64)
    rhs = np.asarray(b, dtype=np.float64)
    if matrix.size == 0:
        return np.zeros(0), 0.0
    rank = np.linalg.matrix_rank(matrix, tol=PIVOT_TOLERANCE)
    if rank < matrix.shape[0]:
        raise SingularBasisError(f"Matrix has numerical rank {rank} < {matrix.shape[0]}")
    x = np.linalg.solve(matrix, rhs)
    return x, float(np.linalg.norm(matrix @ x - rhs))
