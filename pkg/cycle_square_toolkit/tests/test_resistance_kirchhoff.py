from fractions import Fraction

import pytest

from hitting_times.exceptions import NonIntegerResult, UnsupportedN, VertexOutOfRange
from hitting_times.resistance_kirchhoff import (
    ResistanceResult,
    _as_integer,
    convolution_identity,
    effective_resistance,
    kirchhoff_index,
    kirchhoff_index_by_sum,
    merged_tree_count,
    merged_tree_count_by_determinant,
    resistance_by_kirchhoff,
    resistance_result,
    tree_count,
    tree_count_by_determinant,
)


@pytest.mark.parametrize("n, l, expected", [(5, 1, Fraction(2, 5)), (6, 3, Fraction(1, 2)), (10, 5, Fraction(15, 22))])
def test_effective_resistance_examples(n, l, expected):
    assert effective_resistance(n, l) == expected


def test_resistance_result_record():
    assert resistance_result(6, 3) == ResistanceResult(n=6, l=3, r=Fraction(1, 2))


@pytest.mark.parametrize("l", [0, 5, -2])
def test_effective_resistance_rejects_bad_vertex(l):
    with pytest.raises(VertexOutOfRange):
        effective_resistance(5, l)


@pytest.mark.parametrize("n, expected", [(5, Fraction(4)), (6, Fraction(13, 2)), (10, Fraction(551, 22))])
def test_kirchhoff_index_examples(n, expected):
    assert kirchhoff_index(n) == expected


def test_kirchhoff_index_matches_pair_sum():
    for n in range(5, 61):
        assert kirchhoff_index(n) == kirchhoff_index_by_sum(n), n


@pytest.mark.slow
def test_kirchhoff_index_matches_pair_sum_sweep():
    for n in range(61, 201):
        assert kirchhoff_index(n) == kirchhoff_index_by_sum(n), n


@pytest.mark.parametrize("n, expected", [(5, 125), (6, 384), (10, 30250)])
def test_tree_count_examples(n, expected):
    assert tree_count(n) == expected
    assert tree_count_by_determinant(n) == expected


@pytest.mark.parametrize("n, l, expected", [(5, 1, 50), (6, 3, 192), (10, 5, 20625)])
def test_merged_tree_count_examples(n, l, expected):
    assert merged_tree_count(n, l) == expected
    assert merged_tree_count_by_determinant(n, l) == expected


def test_tree_counts_match_determinants():
    for n in range(5, 21):
        assert tree_count(n) == tree_count_by_determinant(n)
        for l in range(1, n):
            assert merged_tree_count(n, l) == merged_tree_count_by_determinant(n, l), (n, l)


@pytest.mark.slow
def test_matrix_tree_and_kirchhoff_ratio_sweep():
    for n in range(5, 61):
        if n <= 50:
            assert tree_count(n) == tree_count_by_determinant(n), n
        for l in range(1, n):
            if n <= 50:
                assert merged_tree_count(n, l) == merged_tree_count_by_determinant(n, l), (n, l)
            assert resistance_by_kirchhoff(n, l) == effective_resistance(n, l), (n, l)


def test_kirchhoff_ratio_small_n():
    for n in range(5, 16):
        for l in range(1, n):
            assert resistance_by_kirchhoff(n, l) == effective_resistance(n, l), (n, l)


def test_convolution_identity():
    assert all(convolution_identity(n) for n in range(0, 501))
    with pytest.raises(ValueError):
        convolution_identity(-1)


def test_small_n_and_non_integer_counts():
    with pytest.raises(UnsupportedN):
        tree_count(4)
    with pytest.raises(NonIntegerResult):
        _as_integer(Fraction(7, 2), "half")
