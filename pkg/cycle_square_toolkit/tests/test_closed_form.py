from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import accumulate

import pytest
from pydantic import ValidationError

from hitting_times.closed_form import (
    EXCESS_LIMIT,
    HitResult,
    chair_hitting_time,
    excess_limit,
    fixed_l_excess_limit,
    hit_result,
    hitting_first,
    hitting_time,
    hitting_vector,
    nearest_vertex,
    normalized_excess,
    scaled_hitting,
    scaled_limit,
    y_vector,
    z_vector,
)
from hitting_times.cycle_graph import build_graph, reduced_laplacian
from hitting_times.exact_numeric import PHI_INV_SQUARED, fib, parity_sign, surd5_pow
from hitting_times.exceptions import UnsupportedN
from hitting_times.linsolve_oracle import solve


@pytest.mark.parametrize(
    "n, l, expected",
    [(5, 1, Fraction(4)), (5, 0, Fraction(0)), (6, 3, Fraction(6)), (10, 5, Fraction(150, 11))],
)
def test_hitting_time_examples(n, l, expected):
    assert hitting_time(n, l) == expected


@pytest.mark.parametrize("n, l, expected", [(6, 1, 5), (5, 2, 4), (10, 5, Fraction(150, 11))])
def test_chair_examples(n, l, expected):
    assert chair_hitting_time(n, l) == expected


def test_l_is_taken_mod_n():
    assert hitting_time(5, 6) == hitting_time(5, 1)
    assert hitting_time(6, -1) == hitting_time(6, 5)
    assert hitting_time(7, 14) == 0


def test_small_n_rejected():
    with pytest.raises(UnsupportedN):
        hitting_time(4, 1)
    with pytest.raises(UnsupportedN):
        chair_hitting_time(3, 1)
    with pytest.raises(UnsupportedN):
        z_vector(4)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 15, 24, 33])
def test_hitting_time_matches_linear_solve(n):
    solved = solve(reduced_laplacian(build_graph(n)), [4] * (n - 1))
    assert tuple(hitting_time(n, l) for l in range(1, n)) == solved


@pytest.mark.slow
def test_hitting_time_matches_linear_solve_sweep():
    for n in range(5, 201):
        solved = solve(reduced_laplacian(build_graph(n)), [4] * (n - 1))
        assert tuple(hitting_time(n, l) for l in range(1, n)) == solved, n


@pytest.mark.slow
def test_chair_matches_single_formula_sweep():
    for n in range(5, 101):
        for l in range(n):
            assert chair_hitting_time(n, l) == hitting_time(n, l), (n, l)


def test_symmetry_and_recurrence():
    for n in range(5, 41):
        for l in range(1, n):
            assert hitting_time(n, l) == hitting_time(n, n - l)
            neighbours = sum(hitting_time(n, l + d) for d in (-2, -1, 1, 2))
            assert 4 * hitting_time(n, l) - neighbours == 4, (n, l)


def test_hit_result_and_vector():
    assert hit_result(10, 15) == HitResult(n=10, l=5, value=Fraction(150, 11))
    assert [r.value for r in hitting_vector(6)] == [0, 5, 5, 6]
    assert [r.l for r in hitting_vector(5)] == [0, 1, 2]


def test_hit_result_rejects_inconsistent_values():
    with pytest.raises(ValidationError):
        HitResult(n=5, l=0, value=Fraction(1))
    with pytest.raises(ValidationError):
        HitResult(n=5, l=2, value=Fraction(0))
    with pytest.raises(ValidationError):
        HitResult(n=5, l=1, value=Fraction(-4))


def test_z_and_y_examples():
    assert z_vector(5) == (4, 0)
    assert z_vector(6)[0] == 5
    assert y_vector(5) == (4, 0)
    for n in (6, 9, 20):
        assert y_vector(n)[0] == hitting_time(n, 1)


def test_prefix_sums_of_y_rebuild_hitting_times():
    for n in range(5, 61):
        expected = tuple(hitting_time(n, l) for l in range(1, n // 2 + 1))
        assert tuple(accumulate(y_vector(n))) == expected, n


def test_hitting_first_examples():
    assert hitting_first(5) == 4
    assert hitting_first(6) == 5
    for n in range(5, 80):
        assert hitting_first(n) == hitting_time(n, 1)


def test_normalized_excess_closed_form():
    for n in (5, 10, 50):
        for l in range(n):
            assert normalized_excess(n, l) == Fraction(4 * fib(l) * fib(n - l), 5 * fib(n))
    assert normalized_excess(50, 1) == Fraction(4 * fib(49), 5 * fib(50))
    assert normalized_excess(50, 0) == 0


def test_normalized_excess_converges_along_half_cycle():
    with localcontext() as ctx:
        ctx.prec = 20
        limit = excess_limit(20)
        for n in (40, 41, 60, 101):
            value = normalized_excess(n, n // 2)
            decimal_value = Decimal(value.numerator) / Decimal(value.denominator)
            assert abs(decimal_value - limit) < Decimal("1e-6"), n


def test_excess_limit_value():
    assert str(excess_limit(6)) == "0.357771"
    assert EXCESS_LIMIT * EXCESS_LIMIT == Fraction(16, 125)


def test_fixed_l_limit_differs_from_half_cycle_limit():
    """For fixed l the excess tends to (4/5) F_l phi^-l, which only reaches 4/(5 sqrt5) as l grows."""
    for l in range(0, 12):
        expected = EXCESS_LIMIT * (1 - parity_sign(l) * surd5_pow(PHI_INV_SQUARED, l))
        assert fixed_l_excess_limit(l) == expected
    assert fixed_l_excess_limit(0) == 0

    limit = fixed_l_excess_limit(1)
    gap = limit - normalized_excess(80, 1)
    assert abs(float(gap.a) + float(gap.b) * 5**0.5) < 1e-12


def test_scaled_hitting_and_limit():
    l = nearest_vertex(1000, Fraction(3, 10))
    assert l == 300
    assert abs(float(scaled_hitting(1000, l)) - 0.084358) < 1e-6
    assert scaled_limit(Fraction(3, 10)) == Fraction(21, 250)
    assert scaled_hitting(10, 5) == Fraction(150, 1100)
    with pytest.raises(ValueError):
        scaled_limit(Fraction(3, 2))
