"""
Sweeps that check every closed form against its independent oracle.

Each check is isolated: an exception inside one check is logged and recorded as
a failure, and the sweep moves on to the next (N, l, i, j).
"""

import logging
from fractions import Fraction
from itertools import accumulate
from typing import Any, Callable, Dict, List, Tuple

from pydantic import BaseModel

from hitting_times.closed_form import chair_hitting_time, hitting_first, hitting_time, y_vector, z_vector
from hitting_times.cycle_graph import ExactMatrix, build_graph, build_H, reduced_laplacian, require_supported_n
from hitting_times.decomposition import (
    build_bundle,
    h_inverse_matrix,
    matrix_route_vectors,
    s_matrix,
    verify_factorization,
)
from hitting_times.exact_numeric import IDENTITIES, fib, identity_check
from hitting_times.linsolve_oracle import determinant, inverse, solve
from hitting_times.resistance_kirchhoff import (
    convolution_identity,
    effective_resistance,
    kirchhoff_index,
    kirchhoff_index_by_sum,
    merged_tree_count,
    merged_tree_count_by_determinant,
    resistance_by_kirchhoff,
    tree_count,
    tree_count_by_determinant,
)

logger = logging.getLogger(__name__)

# --- Configuration ---
SUITES = ("identities", "decomp", "oracle", "chair", "kirchhoff")
IDENTITY_PAIR_LIMIT = 60
MATRIX_TREE_LIMIT = 50
KIRCHHOFF_RATIO_LIMIT = 60


class Failure(BaseModel):
    suite: str
    formula: str
    indices: Dict[str, int]
    expected: str
    actual: str

    def describe(self) -> str:
        where = ", ".join(f"{k}={v}" for k, v in self.indices.items())
        return f"[{self.suite}] {self.formula} at {where}: expected {self.expected}, got {self.actual}"


class _Sweep:
    """Collects failures for one suite."""

    def __init__(self, suite: str):
        self.suite = suite
        self.failures: List[Failure] = []
        self.checks = 0

    def check(self, formula: str, indices: Dict[str, int], compute: Callable[[], Tuple[Any, Any]]) -> None:
        self.checks += 1
        try:
            expected, actual = compute()
        except Exception as e:
            logger.error(f"Check '{formula}' at {indices} raised: {e}", exc_info=True)
            self.failures.append(
                Failure(
                    suite=self.suite,
                    formula=formula,
                    indices=indices,
                    expected="a value",
                    actual=f"{type(e).__name__}: {e}",
                )
            )
            return
        if expected != actual:
            logger.debug(f"Check '{formula}' at {indices} failed: {expected} != {actual}")
            self.failures.append(
                Failure(suite=self.suite, formula=formula, indices=indices, expected=str(expected), actual=str(actual))
            )


# --- Suites ---


def _identities(sweep: _Sweep, n_max: int) -> None:
    upper = max(n_max, 2)
    for identity_id, identity in IDENTITIES.items():
        if identity.arity != 1:
            continue
        for n in range(2, upper + 1):
            sweep.check(f"Fibonacci identity {identity_id}", {"n": n}, lambda: (True, identity_check(identity_id, n)))

    pair_limit = min(upper, IDENTITY_PAIR_LIMIT)
    for m in range(1, pair_limit + 1):
        for n in range(1, m + 1):
            sweep.check("Fibonacci identity 4", {"m": m, "n": n}, lambda: (True, identity_check(4, m, n)))

    for n in range(-upper, upper + 1):
        sweep.check("F_n = F_{n-1} + F_{n-2}", {"n": n}, lambda: (fib(n - 1) + fib(n - 2), fib(n)))

    for n in range(0, upper + 1):
        sweep.check("Fibonacci convolution", {"N": n}, lambda: (True, convolution_identity(n)))


def _decomp(sweep: _Sweep, n_max: int) -> None:
    for n in range(5, n_max + 1):
        bundle = build_bundle(n)
        h = build_H(n).matrix
        m = bundle.m
        identity = ExactMatrix.identity(m)
        sweep.check("H = U^-1 W D W^t U^-t", {"N": n}, lambda: (True, verify_factorization(n)))
        sweep.check("entry case table = H", {"N": n}, lambda: (h, s_matrix(n)))
        sweep.check("det H = F_N", {"N": n}, lambda: (Fraction(fib(n)), determinant(h)))
        sweep.check("det D = F_N", {"N": n}, lambda: (Fraction(fib(n)), determinant(bundle.D)))
        sweep.check("W W^-1 = I", {"N": n}, lambda: (identity, bundle.W @ bundle.W_inv))
        sweep.check("U U^-1 = I", {"N": n}, lambda: (identity, bundle.U @ bundle.U_inv))
        sweep.check("closed-form H^-1", {"N": n}, lambda: (inverse(h), h_inverse_matrix(n)))
        route = matrix_route_vectors(n)
        sweep.check("z = 2 D^-1 W^-1 rhs", {"N": n}, lambda: (route[0], z_vector(n)))
        sweep.check("y = W^-t z", {"N": n}, lambda: (route[1], y_vector(n)))


def _oracle(sweep: _Sweep, n_max: int) -> None:
    for n in range(5, n_max + 1):
        solved = solve(reduced_laplacian(build_graph(n)), [4] * (n - 1))
        for l in range(1, n):
            sweep.check("h_N(0,l) vs L' h = 4", {"N": n, "l": l}, lambda: (solved[l - 1], hitting_time(n, l)))
            sweep.check("h_N(0,l) = h_N(0,N-l)", {"N": n, "l": l}, lambda: (hitting_time(n, n - l), hitting_time(n, l)))
            sweep.check(
                "4h(l) - h(l-1) - h(l-2) - h(l+1) - h(l+2) = 4",
                {"N": n, "l": l},
                lambda: (
                    Fraction(4),
                    4 * hitting_time(n, l) - sum(hitting_time(n, l + d) for d in (-2, -1, 1, 2)),
                ),
            )
        sweep.check("h_N(0,1) by convolution", {"N": n}, lambda: (hitting_time(n, 1), hitting_first(n)))
        halves = tuple(hitting_time(n, l) for l in range(1, n // 2 + 1))
        sweep.check("prefix sums of y", {"N": n}, lambda: (halves, tuple(accumulate(y_vector(n)))))


def _chair(sweep: _Sweep, n_max: int) -> None:
    for n in range(5, n_max + 1):
        for l in range(n):
            sweep.check(
                "two-branch formula = single formula",
                {"N": n, "l": l},
                lambda: (hitting_time(n, l), chair_hitting_time(n, l)),
            )


def _kirchhoff(sweep: _Sweep, n_max: int) -> None:
    for n in range(5, n_max + 1):
        sweep.check("Kf closed form = pair sum", {"N": n}, lambda: (kirchhoff_index_by_sum(n), kirchhoff_index(n)))
        if n <= MATRIX_TREE_LIMIT:
            sweep.check("N F_N^2 = det L'", {"N": n}, lambda: (tree_count_by_determinant(n), tree_count(n)))
            for l in range(1, n):
                sweep.check(
                    "merged tree count = det",
                    {"N": n, "l": l},
                    lambda: (merged_tree_count_by_determinant(n, l), merged_tree_count(n, l)),
                )
        if n <= KIRCHHOFF_RATIO_LIMIT:
            for l in range(1, n):
                sweep.check(
                    "r(0,l) = merged trees / trees",
                    {"N": n, "l": l},
                    lambda: (resistance_by_kirchhoff(n, l), effective_resistance(n, l)),
                )


SUITE_RUNNERS: Dict[str, Callable[[_Sweep, int], None]] = {
    "identities": _identities,
    "decomp": _decomp,
    "oracle": _oracle,
    "chair": _chair,
    "kirchhoff": _kirchhoff,
}


def run_suite(name: str, n_max: int) -> List[Failure]:
    """
    Runs one verification suite, or all of them, for 5 <= N <= n_max.

    Args:
        name: One of SUITES, or "all".
        n_max: Largest N to sweep, at least 5.

    Returns:
        Every failed check; an empty list means the suite passed.
    """
    require_supported_n(n_max)
    if name == "all":
        failures: List[Failure] = []
        for suite in SUITES:
            failures.extend(run_suite(suite, n_max))
        return failures
    runner = SUITE_RUNNERS.get(name)
    if runner is None:
        raise ValueError(f"Unknown verification suite '{name}'; expected one of {', '.join(SUITES)} or 'all'")

    sweep = _Sweep(name)
    logger.info(f"Verification suite '{name}' started for 5 <= N <= {n_max}")
    runner(sweep, n_max)
    logger.info(f"Verification suite '{name}' finished: {sweep.checks} checks, {len(sweep.failures)} failures")
    return sweep.failures
