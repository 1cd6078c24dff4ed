"""
Fibonacci factorization of the halved matrix H_N.

For m = floor(N/2):

* U is the m x m upper-triangular matrix of ones, U^-1 has 1 on the diagonal
  and -1 just above it.
* W is unit lower bidiagonal with W(k+1, k) = F_{2k-1}/F_{2k+1}, and
  W^-1(i, j) = (-1)^{i-j} F_{2j-1}/F_{2i-1} for i >= j.
* D = diag(F_3/F_1, F_5/F_3, ..., F_{2m-1}/F_{2m-3}, F_N/F_{2m-1}).

Then H_N = U^-1 W D W^t (U^-1)^t. Indices in this module are 1-based.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict

from hitting_times.cycle_graph import ExactMatrix, build_H, require_supported_n
from hitting_times.exact_numeric import fib, parity_sign
from hitting_times.exceptions import IndexOutOfRange

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecompositionBundle:
    n: int
    m: int
    U: ExactMatrix
    U_inv: ExactMatrix
    W: ExactMatrix
    W_inv: ExactMatrix
    D: ExactMatrix

    def product(self) -> ExactMatrix:
        """U^-1 W D W^t (U^-1)^t, which should reproduce H_N."""
        return self.U_inv @ self.W @ self.D @ self.W.transpose() @ self.U_inv.transpose()

    def d_inverse(self) -> ExactMatrix:
        return ExactMatrix.diagonal([1 / self.D[k, k] for k in range(self.m)])


class InverseEntry(BaseModel):
    """One entry (i, j) of H_N^-1, 1-based."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    i: int
    j: int
    value: Fraction


def build_bundle(n: int) -> DecompositionBundle:
    require_supported_n(n)
    m = n // 2
    upper = [[1 if i <= j else 0 for j in range(m)] for i in range(m)]
    upper_inv = [[1 if i == j else (-1 if j == i + 1 else 0) for j in range(m)] for i in range(m)]

    # 0-based row r holds index r + 1, so W(k+1, k) sits at (k, k - 1)
    w = [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    for k in range(1, m):
        w[k][k - 1] = Fraction(fib(2 * k - 1), fib(2 * k + 1))

    w_inv = [
        [
            Fraction(parity_sign(i - j) * fib(2 * j - 1), fib(2 * i - 1)) if i >= j else Fraction(0)
            for j in range(1, m + 1)
        ]
        for i in range(1, m + 1)
    ]

    d = [Fraction(fib(2 * k + 1), fib(2 * k - 1)) for k in range(1, m)]
    d.append(Fraction(fib(n), fib(2 * m - 1)))

    return DecompositionBundle(
        n=n,
        m=m,
        U=ExactMatrix.from_rows(upper),
        U_inv=ExactMatrix.from_rows(upper_inv),
        W=ExactMatrix.from_rows(w),
        W_inv=ExactMatrix.from_rows(w_inv),
        D=ExactMatrix.diagonal(d),
    )


def verify_factorization(n: int) -> bool:
    """True iff U^-1 W D W^t (U^-1)^t equals build_H(n) exactly."""
    bundle = build_bundle(n)
    matches = bundle.product() == build_H(n).matrix
    if not matches:
        logger.warning(f"Factorization mismatch at N={n}")
    return matches


def matrix_route_vectors(n: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """
    Computes z and y through the factors rather than the closed forms.

    With U times the right-hand side equal to 2 (N - 1, N - 3, ...), we get
    z = D^-1 W^-1 U rhs and y = (W^-1)^t z.
    """
    bundle = build_bundle(n)
    folded_rhs = [2 * (n - 2 * i + 1) for i in range(1, bundle.m + 1)]
    z = bundle.d_inverse() @ (bundle.W_inv @ folded_rhs)
    y = bundle.W_inv.transpose() @ z
    return z, y


def _require_index(n: int, *indices: int) -> int:
    require_supported_n(n)
    m = n // 2
    for index in indices:
        if isinstance(index, bool) or not isinstance(index, int) or not 1 <= index <= m:
            raise IndexOutOfRange(f"Index must lie in 1..{m} for N={n} (got {index})")
    return m


def s_entry_case(n: int, i: int, j: int) -> Fraction:
    """
    Entry (i, j) of U^-1 W D W^t (U^-1)^t, evaluated case by case without simplification.

    Branches are tried in order, so (1, 1) wins over (m-1, m-1) when m = 2.
    """
    m = _require_index(n, i, j)
    F = fib
    gap = abs(i - j)
    if gap >= 3:
        return Fraction(0)
    if gap == 2:
        return Fraction(-1)
    if gap == 1:
        k = max(i, j)
        if k == m:
            return 1 - Fraction(F(2 * m - 3) + F(n), F(2 * m - 1))
        return 2 - Fraction(F(2 * k - 3) + F(2 * k + 1), F(2 * k - 1))
    if i == 1:
        return Fraction(F(3), F(1)) + Fraction(F(1) + F(5), F(3)) - 2
    if i == m:
        return Fraction(F(2 * m - 3) + F(n), F(2 * m - 1))
    if i == m - 1:
        return Fraction(F(2 * m - 1) + F(2 * m - 5), F(2 * m - 3)) + Fraction(F(2 * m - 3) + F(n), F(2 * m - 1)) - 2
    return Fraction(F(2 * i - 3) + F(2 * i + 1), F(2 * i - 1)) + Fraction(F(2 * i - 1) + F(2 * i + 3), F(2 * i + 1)) - 2


def s_matrix(n: int) -> ExactMatrix:
    m = n // 2
    return ExactMatrix.from_rows([[s_entry_case(n, i, j) for j in range(1, m + 1)] for i in range(1, m + 1)])


def h_inverse_entry(n: int, i: int, j: int) -> Fraction:
    """
    Closed-form entry (i, j) of H_N^-1.

    F_i F_j F_{N-i} F_{N-j} / (F_N F_{N-1})
      + sum_{k=1}^{min(i,j)-1} F_{i-k} F_{j-k} F_{N-i-k} F_{N-j-k} / (F_{N-2k+1} F_{N-2k-1})
    """
    _require_index(n, i, j)
    F = fib
    value = Fraction(F(i) * F(j) * F(n - i) * F(n - j), F(n) * F(n - 1))
    for k in range(1, min(i, j)):
        value += Fraction(F(i - k) * F(j - k) * F(n - i - k) * F(n - j - k), F(n - 2 * k + 1) * F(n - 2 * k - 1))
    return value


def h_inverse_matrix(n: int) -> ExactMatrix:
    m = _require_index(n)
    return ExactMatrix.from_rows([[h_inverse_entry(n, i, j) for j in range(1, m + 1)] for i in range(1, m + 1)])


def h_inverse_entries(n: int) -> List[InverseEntry]:
    m = _require_index(n)
    return [
        InverseEntry(n=n, i=i, j=j, value=h_inverse_entry(n, i, j)) for i in range(1, m + 1) for j in range(1, m + 1)
    ]
