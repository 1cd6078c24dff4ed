"""
Closed-form average hitting times h_N(0, l) of the simple random walk on C_N^2.

The walk moves from v to one of v +/- 1, v +/- 2 with probability 1/4 each.
Every function takes l modulo N, and l = 0 gives 0.
"""

import logging
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from hitting_times.cycle_graph import require_supported_n
from hitting_times.exact_numeric import PHI_INV_SQUARED, SQRT5, Surd5, fib, parity_sign, surd5_pow, surd5_to_rational
from hitting_times.exceptions import IrrationalResult

logger = logging.getLogger(__name__)

# --- Configuration ---
TWO_FIFTHS = Fraction(2, 5)
# 4/(5 sqrt5) = (4/25) sqrt5
EXCESS_LIMIT = Surd5(0, Fraction(4, 25))
PHI_INVERSE = Surd5(Fraction(-1, 2), Fraction(1, 2))


class HitResult(BaseModel):
    """h_N(0, l) for one (N, l) pair."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    l: int
    value: Fraction

    @model_validator(mode="after")
    def _check_value(self) -> "HitResult":
        if not 0 <= self.l < self.n:
            raise ValueError(f"l must lie in 0..{self.n - 1}, got {self.l}")
        if self.value < 0:
            raise ValueError(f"Hitting time must be non-negative, got {self.value}")
        if (self.value == 0) != (self.l == 0):
            raise ValueError(f"Hitting time is zero exactly when l = 0 (l={self.l}, value={self.value})")
        return self


def _normalize(n: int, l: int) -> int:
    require_supported_n(n)
    return l % n


# --- Hitting times ---


def hitting_time(n: int, l: int) -> Fraction:
    """
    Single-formula hitting time on C_N^2.

    h_N(0, l) = (2/5) (l (N - l) + 2N F_l F_{N-l} / F_N)

    Args:
        n: Cycle length, N >= 5.
        l: Target vertex, taken mod N.

    Returns:
        The exact hitting time as a Fraction.
    """
    l = _normalize(n, l)
    if l == 0:
        return Fraction(0)
    return TWO_FIFTHS * (l * (n - l) + Fraction(2 * n * fib(l) * fib(n - l), fib(n)))


@lru_cache(maxsize=256)
def _chair_ratio(n: int) -> Surd5:
    """(1 + q)/(1 - q) for even N and (1 - q)/(1 + q) for odd N, with q = ((3 - sqrt5)/2)^N."""
    q = surd5_pow(PHI_INV_SQUARED, n)
    if n % 2 == 0:
        return (1 + q) / (1 - q)
    return (1 - q) / (1 + q)


def chair_hitting_time(n: int, l: int) -> Fraction:
    """The two-branch formula in Q(sqrt5), collapsed to a rational."""
    l = _normalize(n, l)
    if l == 0:
        return Fraction(0)
    inv_sqrt5 = SQRT5 / 5
    value = (
        TWO_FIFTHS * l * (n - l)
        + parity_sign(l + 1) * 2 * n * inv_sqrt5 * fib(l) ** 2 * _chair_ratio(n)
        + parity_sign(l) * Fraction(2 * n, 5) * fib(2 * l)
    )
    try:
        return surd5_to_rational(value)
    except IrrationalResult:
        logger.error(f"Two-branch formula kept a sqrt5 part at N={n}, l={l}: {value}")
        raise


def hit_result(n: int, l: int) -> HitResult:
    l = _normalize(n, l)
    return HitResult(n=n, l=l, value=hitting_time(n, l))


def hitting_vector(n: int) -> List[HitResult]:
    """HitResults for l = 0..floor(N/2); the rest follow from h(l) = h(N - l)."""
    require_supported_n(n)
    return [hit_result(n, l) for l in range(n // 2 + 1)]


def hitting_first(n: int) -> Fraction:
    """h_N(0, 1) through the convolution sum (2/F_N) sum_{i=0}^{N} F_i F_{N-i}."""
    require_supported_n(n)
    return Fraction(2 * sum(fib(i) * fib(n - i) for i in range(n + 1)), fib(n))


# --- The halved system's intermediate vectors ---


def z_vector(n: int) -> Tuple[Fraction, ...]:
    """Solution z of the lower-triangular stage, indexed l = 1..floor(N/2)."""
    require_supported_n(n)
    m = n // 2
    z = []
    for l in range(1, m):
        tail = Fraction((n - 2 * l - 1) * fib(2 * l - 1) + 2 * n * parity_sign(l - 1), fib(2 * l + 1))
        z.append(TWO_FIFTHS * (n - 2 * l + 1 + tail))
    last = (n - 2 * m) * (fib(2 * m + 1) + fib(2 * m - 1)) + fib(2 * m) + 2 * n * parity_sign(m - 1)
    z.append(Fraction(2 * last, 5 * fib(n)))
    return tuple(z)


def y_vector(n: int) -> Tuple[Fraction, ...]:
    """Successive differences y_l = h(l) - h(l - 1) for l = 1..floor(N/2)."""
    require_supported_n(n)
    f_n = fib(n)
    return tuple(
        TWO_FIFTHS * (n - 2 * l + 1 + Fraction(2 * n * parity_sign(l - 1) * fib(n - 2 * l + 1), f_n))
        for l in range(1, n // 2 + 1)
    )


# --- Asymptotics ---


def normalized_excess(n: int, l: int) -> Fraction:
    """(h_N(0, l) - (2/5) l (N - l)) / N, which equals (4/5) F_l F_{N-l} / F_N."""
    l = _normalize(n, l)
    return (hitting_time(n, l) - TWO_FIFTHS * l * (n - l)) / n


def scaled_hitting(n: int, l: int) -> Fraction:
    return hitting_time(n, l) / (n * n)


def excess_limit(digits: int = 30) -> Decimal:
    """4/(5 sqrt5) to the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits + 5
        value = Decimal(4) * Decimal(5).sqrt() / 25
        ctx.prec = digits
        return +value


def scaled_limit(x: Fraction) -> Fraction:
    """(2/5) x (1 - x), the limit of h_N(0, l)/N^2 as l/N -> x."""
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return TWO_FIFTHS * x * (1 - x)


def fixed_l_excess_limit(l: int) -> Surd5:
    """Limit of normalized_excess(N, l) as N grows with l fixed: (4/5) F_l phi^-l."""
    if l < 0:
        raise ValueError(f"l must be non-negative, got {l}")
    return Fraction(4, 5) * fib(l) * surd5_pow(PHI_INVERSE, l)


def nearest_vertex(n: int, x: Fraction) -> int:
    """l = round(x N) with ties to even, for the l/N -> x regime."""
    require_supported_n(n)
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return round(x * n)
