"""Exact arithmetic: Fibonacci numbers, the Fibonacci identity checks and Q(sqrt5).

Integers are Python ints and rationals are ``fractions.Fraction`` values, which
are always kept in lowest terms with a positive denominator. ``Surd5`` adds the
quadratic field Q(sqrt5) on top of them.
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Tuple, Union

from hitting_times.exceptions import IrrationalResult, UnknownIdentity

logger = logging.getLogger(__name__)

# --- Configuration ---
MAX_FIB_INDEX = 10**6
FIB_MEMO_LIMIT = 20_000

RationalLike = Union[int, Fraction]

_fib_table: List[int] = [0, 1]
_fib_lock = threading.Lock()


# --- Fibonacci numbers ---


def _fib_doubling(n: int) -> Tuple[int, int]:
    """Returns (F_n, F_{n+1}) by fast doubling; n >= 0."""
    if n == 0:
        return 0, 1
    a, b = _fib_doubling(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def _fib_nonnegative(n: int) -> int:
    if n < len(_fib_table):
        return _fib_table[n]
    if n > FIB_MEMO_LIMIT:
        return _fib_doubling(n)[0]
    with _fib_lock:
        while len(_fib_table) <= n:
            _fib_table.append(_fib_table[-1] + _fib_table[-2])
    return _fib_table[n]


def parity_sign(n: int) -> int:
    """(-1)^n as an int, valid for negative n as well."""
    return 1 if n % 2 == 0 else -1


def fib(n: int) -> int:
    """
    Returns the n-th Fibonacci number F_n.

    F_0 = 0, F_1 = 1 and F_n = F_{n-1} + F_{n-2}. Negative indices follow
    F_{-n} = (-1)^{n+1} F_n, so the recurrence holds on all of Z.

    Args:
        n: Index, |n| <= MAX_FIB_INDEX.

    Returns:
        F_n as an exact int.
    """
    if abs(n) > MAX_FIB_INDEX:
        raise ValueError(f"Fibonacci index {n} exceeds the supported bound {MAX_FIB_INDEX}")
    if n >= 0:
        return _fib_nonnegative(n)
    k = -n
    return parity_sign(k + 1) * _fib_nonnegative(k)


# --- Fibonacci identities ---


def _identity_1(n: int) -> bool:
    return fib(n + 1) * fib(n - 1) - fib(n) ** 2 == parity_sign(n)


def _identity_2(n: int) -> bool:
    return fib(2 * n) - 3 * fib(2 * (n - 1)) + fib(2 * (n - 2)) == 0


def _identity_3(n: int) -> bool:
    return fib(2 * n + 1) == fib(n + 1) ** 2 + fib(n) ** 2


def _identity_4(m: int, n: int) -> bool:
    rhs = parity_sign(n + 1) * fib(m - 1) * fib(n) + parity_sign(n) * fib(m) * fib(n - 1)
    return fib(m - n) == rhs


def _identity_5(n: int) -> bool:
    lhs = Fraction(1, fib(2 * n - 1) * fib(2 * n + 1))
    return lhs == Fraction(fib(2 * n + 2), fib(2 * n + 1)) - Fraction(fib(2 * n), fib(2 * n - 1))


def _identity_6(n: int) -> bool:
    if n < 0:
        raise ValueError(f"Alternating odd-index sum needs a non-negative upper limit, got {n}")
    total = sum(parity_sign(n - k) * fib(2 * k - 1) for k in range(1, n + 1))
    return total == fib(n) ** 2


def _identity_7(n: int) -> bool:
    rhs = Fraction(fib(2 * n - 1) + fib(2 * n + 1), 5) + Fraction(2 * parity_sign(n - 1), 5)
    return fib(n) ** 2 == rhs


class FibonacciIdentity(NamedTuple):
    arity: int
    description: str
    check: Callable[..., bool]


IDENTITIES: Dict[int, FibonacciIdentity] = {
    1: FibonacciIdentity(1, "F_{n+1}F_{n-1} - F_n^2 = (-1)^n", _identity_1),
    2: FibonacciIdentity(1, "F_{2n} - 3F_{2(n-1)} + F_{2(n-2)} = 0", _identity_2),
    3: FibonacciIdentity(1, "F_{2n+1} = F_{n+1}^2 + F_n^2", _identity_3),
    4: FibonacciIdentity(2, "F_{m-n} = (-1)^{n+1}F_{m-1}F_n + (-1)^n F_m F_{n-1}", _identity_4),
    5: FibonacciIdentity(1, "1/(F_{2n-1}F_{2n+1}) = F_{2n+2}/F_{2n+1} - F_{2n}/F_{2n-1}", _identity_5),
    6: FibonacciIdentity(1, "sum_{k=1}^{l} (-1)^{l-k} F_{2k-1} = F_l^2", _identity_6),
    7: FibonacciIdentity(1, "F_l^2 = (F_{2l-1} + F_{2l+1})/5 + (2/5)(-1)^{l-1}", _identity_7),
}


def identity_check(identity_id: int, *indices: int) -> bool:
    """
    Evaluates one of the seven Fibonacci identities exactly at the given indices.

    Args:
        identity_id: Identity number, 1..7 (see IDENTITIES).
        *indices: One index, or the pair (m, n) for identity 4.

    Returns:
        True iff both sides agree exactly.
    """
    identity = IDENTITIES.get(identity_id)
    if identity is None:
        raise UnknownIdentity(f"Unknown Fibonacci identity id: {identity_id}")
    if len(indices) != identity.arity:
        raise ValueError(f"Identity {identity_id} takes {identity.arity} index(es), got {len(indices)}")
    return identity.check(*indices)


# --- Q(sqrt5) ---


def as_fraction(value: RationalLike) -> Fraction:
    """Coerces an int or Fraction to Fraction; floats are rejected to keep arithmetic exact."""
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"Expected an int or Fraction, got {type(value).__name__}")
    return Fraction(value)


@dataclass(frozen=True)
class Surd5:
    """The number a + b*sqrt5 with rational a and b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def _coerce(cls, other) -> "Surd5":
        if isinstance(other, Surd5):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(Fraction(other), Fraction(0))
        return NotImplemented

    def norm(self) -> Fraction:
        """Field norm a^2 - 5b^2."""
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "Surd5":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("Surd5 division by zero")
        return Surd5(self.a / norm, -self.b / norm)

    def __neg__(self) -> "Surd5":
        return Surd5(-self.a, -self.b)

    def __add__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Surd5(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Surd5(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Surd5(self.a * other.a + 5 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Surd5":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Surd5":
        return surd5_pow(self, k)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt5"


SQRT5 = Surd5(0, 1)
PHI = Surd5(Fraction(1, 2), Fraction(1, 2))
PHI_INV_SQUARED = Surd5(Fraction(3, 2), Fraction(-1, 2))  # (3 - sqrt5)/2 = phi^-2


def surd5_pow(x: Surd5, k: int) -> Surd5:
    """Exact k-th power of x in Q(sqrt5) by repeated squaring; k >= 0."""
    if k < 0:
        raise ValueError(f"Surd5 exponent must be non-negative, got {k}")
    result = Surd5(1, 0)
    base = x
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def surd5_to_rational(x: Surd5) -> Fraction:
    """Collapses x to a rational, raising IrrationalResult if its sqrt5 part survives."""
    if x.b != 0:
        raise IrrationalResult(f"Value {x} has a nonzero sqrt5 part")
    return x.a
