"""Effective resistance, Kirchhoff index and spanning-tree counts of C_N^2 with unit resistors."""

import logging
from fractions import Fraction
from functools import lru_cache

from pydantic import BaseModel, ConfigDict

from hitting_times.closed_form import hitting_time
from hitting_times.cycle_graph import (
    build_graph,
    merged_laplacian,
    reduced_laplacian,
    require_supported_n,
    require_vertex,
)
from hitting_times.exact_numeric import fib
from hitting_times.exceptions import NonIntegerResult
from hitting_times.linsolve_oracle import determinant

logger = logging.getLogger(__name__)


class ResistanceResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    l: int
    r: Fraction


def effective_resistance(n: int, l: int) -> Fraction:
    """r(0, l) = h_N(0, l) / (2N), since C_N^2 has 2N edges."""
    require_supported_n(n)
    require_vertex(n, l)
    return hitting_time(n, l) / (2 * n)


def resistance_result(n: int, l: int) -> ResistanceResult:
    return ResistanceResult(n=n, l=l, r=effective_resistance(n, l))


def kirchhoff_index(n: int) -> Fraction:
    """
    Closed-form Kirchhoff index of C_N^2.

    Kf = N (N - 1)(5N + 17)/300 + (2N^2/25) F_{N-1}/F_N
    """
    require_supported_n(n)
    return Fraction(n * (n - 1) * (5 * n + 17), 300) + Fraction(2 * n * n * fib(n - 1), 25 * fib(n))


def kirchhoff_index_by_sum(n: int) -> Fraction:
    """Kf as the sum of r(i, j) over unordered pairs, using r(i, j) = r(0, j - i)."""
    require_supported_n(n)
    return sum((Fraction(n - i) * effective_resistance(n, i) for i in range(1, n)), Fraction(0))


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegerResult(f"{what} did not reduce to an integer: {value}")
    return value.numerator


def tree_count(n: int) -> int:
    """Number of spanning trees, N F_N^2."""
    require_supported_n(n)
    return n * fib(n) ** 2


def merged_tree_count(n: int, l: int) -> int:
    """
    Spanning trees of C_N^2 with vertices 0 and l identified.

    (F_N / 5) (l (N - l) F_N + 2N F_l F_{N-l})
    """
    require_supported_n(n)
    require_vertex(n, l)
    f_n = fib(n)
    value = Fraction(f_n * (l * (n - l) * f_n + 2 * n * fib(l) * fib(n - l)), 5)
    return _as_integer(value, f"Merged tree count at N={n}, l={l}")


def convolution_identity(n: int) -> bool:
    """Checks sum_{i=0}^{N} F_i F_{N-i} = ((N - 1) F_N + 2N F_{N-1}) / 5 exactly."""
    if n < 0:
        raise ValueError(f"Convolution identity needs N >= 0, got {n}")
    lhs = sum(fib(i) * fib(n - i) for i in range(n + 1))
    return 5 * lhs == (n - 1) * fib(n) + 2 * n * fib(n - 1)


# --- Determinant oracles ---


@lru_cache(maxsize=None)
def tree_count_by_determinant(n: int) -> int:
    """Matrix-Tree theorem: det L'."""
    det = determinant(reduced_laplacian(build_graph(n)))
    return _as_integer(det, f"det L' at N={n}")


@lru_cache(maxsize=1024)
def merged_tree_count_by_determinant(n: int, l: int) -> int:
    """Matrix-Tree theorem on the 0/l-merged multigraph."""
    merged = merged_laplacian(build_graph(n), l)
    det = determinant(merged.minor(0, 0))
    return _as_integer(det, f"Merged det at N={n}, l={l}")


def resistance_by_kirchhoff(n: int, l: int) -> Fraction:
    """r(0, l) as merged tree count over tree count, both from determinants."""
    merged = merged_tree_count_by_determinant(n, l)
    total = tree_count_by_determinant(n)
    logger.debug(f"N={n}, l={l}: {merged} merged trees out of {total}")
    return Fraction(merged, total)
