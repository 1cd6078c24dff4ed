"""Exact Gaussian elimination over Q, used as an independent oracle for the closed forms."""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from hitting_times.cycle_graph import ExactMatrix
from hitting_times.exact_numeric import RationalLike, as_fraction
from hitting_times.exceptions import SingularMatrix

logger = logging.getLogger(__name__)


def _require_square(a: ExactMatrix) -> int:
    n_rows, n_cols = a.shape
    if n_rows != n_cols:
        raise ValueError(f"Expected a square matrix, got shape {a.shape}")
    return n_rows


def _forward_eliminate(rows: List[List[Fraction]], n_pivots: int) -> Optional[int]:
    """
    Reduces rows to upper-triangular form in place on the first n_pivots columns.

    Pivots are the first nonzero entry at or below the diagonal. Zero multipliers
    and zero pivot-row entries are skipped, so banded input stays cheap.

    Returns:
        The sign (+1/-1) accumulated by row swaps, or None if the matrix is singular.
    """
    sign = 1
    width = len(rows[0])
    for k in range(n_pivots):
        pivot_row = next((r for r in range(k, n_pivots) if rows[r][k] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        prow = rows[k]
        pivot = prow[k]
        nonzero_cols = [c for c in range(k + 1, width) if prow[c] != 0]
        for r in range(k + 1, n_pivots):
            target = rows[r]
            if target[k] == 0:
                continue
            factor = target[k] / pivot
            target[k] = Fraction(0)
            for c in nonzero_cols:
                target[c] -= factor * prow[c]
    return sign


def solve(a: ExactMatrix, b: Sequence[RationalLike]) -> Tuple[Fraction, ...]:
    """
    Solves A x = b exactly.

    The solution is substituted back into A x before it is returned.

    Args:
        a: Square, nonsingular matrix.
        b: Right-hand side of matching length.

    Returns:
        The solution vector as a tuple of Fractions.
    """
    n = _require_square(a)
    rhs = [as_fraction(v) for v in b]
    if len(rhs) != n:
        raise ValueError(f"Right-hand side has length {len(rhs)}, expected {n}")
    rows = [list(row) + [rhs[i]] for i, row in enumerate(a.rows)]
    if _forward_eliminate(rows, n) is None:
        raise SingularMatrix(f"Matrix of size {n} is singular")

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = rows[i]
        acc = row[n]
        for j in range(i + 1, n):
            if row[j] != 0:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]

    solution = tuple(x)
    if a @ solution != tuple(rhs):
        raise ArithmeticError(f"Exact solve of size {n} failed the substitution check")
    logger.debug(f"Solved a {n}x{n} system exactly")
    return solution


def determinant(a: ExactMatrix) -> Fraction:
    """Exact determinant by rational elimination; a singular matrix gives 0."""
    n = _require_square(a)
    rows = a.to_lists()
    sign = _forward_eliminate(rows, n)
    if sign is None:
        return Fraction(0)
    det = Fraction(sign)
    for i in range(n):
        det *= rows[i][i]
    return det


def inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan on [A | I], checked against A A^-1 = I."""
    n = _require_square(a)
    rows = [list(row) + [Fraction(1) if c == r else Fraction(0) for c in range(n)] for r, row in enumerate(a.rows)]
    if _forward_eliminate(rows, n) is None:
        raise SingularMatrix(f"Matrix of size {n} is singular")

    width = 2 * n
    for k in range(n - 1, -1, -1):
        prow = rows[k]
        pivot = prow[k]
        if pivot != 1:
            for c in range(k, width):
                if prow[c] != 0:
                    prow[c] /= pivot
        nonzero_cols = [c for c in range(k, width) if prow[c] != 0]
        for r in range(k):
            target = rows[r]
            factor = target[k]
            if factor == 0:
                continue
            for c in nonzero_cols:
                target[c] -= factor * prow[c]

    result = ExactMatrix.from_rows(row[n:] for row in rows)
    if a @ result != ExactMatrix.identity(n):
        raise ArithmeticError(f"Exact inverse of size {n} failed the A A^-1 = I check")
    return result
