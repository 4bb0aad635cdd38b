"""
Tests for exact.py: fraction-free elimination and rational parsing.
"""
from fractions import Fraction

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from errors import DimensionMismatchError, InputError
from exact import (arrays_equal, format_fraction, fraction_array, identity, inverse, is_zero,
                   nullspace, parse_rational, rank, row_reduce, solve, to_fraction)


@st.composite
def integer_matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.lists(st.integers(-5, 5), min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return fraction_array(entries)


class TestParsing:
    def test_parse_integer_and_fraction(self):
        assert parse_rational("7") == Fraction(7)
        assert parse_rational(" -3/4 ") == Fraction(-3, 4)

    @pytest.mark.parametrize("text", ["1/0", "x", "1/2/3", "", "0.5"])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(InputError):
            parse_rational(text)

    def test_to_fraction_rejects_floats_and_bools(self):
        with pytest.raises(InputError):
            to_fraction(0.5)
        with pytest.raises(InputError):
            to_fraction(True)

    def test_format_fraction(self):
        assert format_fraction(Fraction(6, 3)) == "2"
        assert format_fraction(Fraction(-1, 2)) == "-1/2"

    @given(st.fractions())
    def test_format_parse_inverse(self, value):
        assert parse_rational(format_fraction(value)) == value


class TestElimination:
    def test_row_reduce_is_identity_for_invertible(self):
        reduced, pivots = row_reduce(fraction_array([[2, 4], [1, 3]]))
        assert arrays_equal(reduced, identity(2))
        assert pivots == [0, 1]

    def test_row_reduce_canonical_rows(self):
        reduced, pivots = row_reduce(fraction_array([[2, 4, 6], [1, 2, 3]]))
        assert pivots == [0]
        assert arrays_equal(reduced, fraction_array([[1, 2, 3]]))

    def test_empty_matrix_needs_column_count(self):
        reduced, pivots = row_reduce(np.empty(0, dtype=object), 3)
        assert reduced.shape == (0, 3)
        assert pivots == []
        with pytest.raises(DimensionMismatchError):
            row_reduce(np.empty(0, dtype=object))

    def test_nullspace(self):
        kernel = nullspace(fraction_array([[1, 1]]))
        assert len(kernel) == 1
        assert arrays_equal(kernel[0], fraction_array([-1, 1]))

    def test_solve_consistent_and_inconsistent(self):
        x = solve(fraction_array([[1, 1], [1, -1]]), fraction_array([3, 1]))
        assert arrays_equal(x, fraction_array([2, 1]))
        assert solve(fraction_array([[1], [1]]), fraction_array([1, 2])) is None

    def test_inverse(self):
        a = fraction_array([[1, 2], [3, 4]])
        assert arrays_equal(np.dot(a, inverse(a)), identity(2))
        with pytest.raises(ValueError):
            inverse(fraction_array([[1, 2], [2, 4]]))

    @given(integer_matrices())
    @settings(max_examples=50, deadline=None)
    def test_rank_nullity(self, matrix):
        kernel = nullspace(matrix)
        assert rank(matrix) + len(kernel) == matrix.shape[1]
        for v in kernel:
            assert is_zero(np.dot(matrix, v))

    @given(integer_matrices())
    @settings(max_examples=50, deadline=None)
    def test_rank_of_transpose(self, matrix):
        assert rank(matrix) == rank(matrix.T)

    @given(integer_matrices())
    @settings(max_examples=50, deadline=None)
    def test_row_reduce_idempotent(self, matrix):
        reduced, pivots = row_reduce(matrix)
        again, pivots_again = row_reduce(reduced, matrix.shape[1])
        assert pivots == pivots_again
        assert arrays_equal(reduced, again)
