"""
Tests for lie_core.py: brackets, validation, series, Killing form, semidirect sums.
"""
from fractions import Fraction

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from catalog import heisenberg_algebra, kath_olbrich_algebra, sl3_algebra
from errors import (DerivationError, DimensionMismatchError, HomomorphismError, InputError,
                    NotInSubspaceError)
from exact import arrays_equal, fraction_array, is_zero, unit_vector, zeros
from forms import signature
from lie_core import (NOT_NILPOTENT, LieAlgebra, Subspace, ad_matrix, algebra_from_matrices,
                      bracket, ideal_series, is_ideal, killing_form, lower_central_series,
                      nilpotency_step, product_subspace, semidirect_sum, validate)

small_vectors = st.lists(st.integers(-3, 3), min_size=8, max_size=8).map(fraction_array)


class TestSubspace:
    def test_span_is_canonical(self):
        a = Subspace.span(3, [fraction_array([1, 1, 0]), fraction_array([1, -1, 0])])
        assert a == Subspace.coordinate(3, [0, 1])

    def test_intersection_and_sum(self):
        a = Subspace.coordinate(3, [0, 1])
        b = Subspace.coordinate(3, [1, 2])
        assert a.intersection(b) == Subspace.coordinate(3, [1])
        assert a.sum(b) == Subspace.full(3)
        assert a.intersection(Subspace.zero(3)).dim == 0

    def test_coordinates(self):
        s = Subspace.span(3, [fraction_array([1, 0, 2])])
        assert arrays_equal(s.coordinates(fraction_array([3, 0, 6])), fraction_array([3]))
        with pytest.raises(NotInSubspaceError):
            s.coordinates(fraction_array([1, 0, 0]))
        with pytest.raises(DimensionMismatchError):
            s.coordinates(fraction_array([1, 0]))

    def test_includes(self):
        assert Subspace.full(2).includes(Subspace.coordinate(2, [1]))
        assert not Subspace.coordinate(2, [1]).includes(Subspace.full(2))


class TestBracket:
    def test_kath_olbrich_brackets(self):
        ko = kath_olbrich_algebra(2)
        e1, e2, f1 = (ko.basis_vector(n) for n in ("e1", "e2", "f1"))
        assert arrays_equal(bracket(ko, e1, f1), ko.basis_vector("z1"))
        assert is_zero(bracket(ko, e1, e2))

    def test_dimension_mismatch(self, heis3):
        with pytest.raises(DimensionMismatchError):
            bracket(heis3, zeros(2), zeros(3))

    def test_ad_matrix_matches_bracket(self, heis3):
        x, y = unit_vector(3, 0), unit_vector(3, 1)
        assert arrays_equal(np.dot(ad_matrix(heis3, x), y), bracket(heis3, x, y))

    @given(small_vectors, small_vectors)
    @settings(max_examples=30, deadline=None)
    def test_antisymmetric(self, x, y):
        g = sl3_algebra()
        assert arrays_equal(bracket(g, x, y), -bracket(g, y, x))
        assert is_zero(bracket(g, x, x))

    @given(small_vectors, small_vectors, small_vectors)
    @settings(max_examples=20, deadline=None)
    def test_jacobi_on_random_vectors(self, x, y, z):
        g = sl3_algebra()
        total = (bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x))
                 + bracket(g, z, bracket(g, x, y)))
        assert is_zero(total)


class TestValidate:
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_kath_olbrich_valid(self, m):
        assert validate(kath_olbrich_algebra(m)).passed

    @pytest.mark.parametrize("p,q", [(1, 0), (1, 1), (2, 1)])
    def test_heisenberg_valid(self, p, q):
        assert validate(heisenberg_algebra(p, q)).passed

    def test_antisymmetry_violation(self):
        broken = LieAlgebra(("b1", "b2"), {(0, 1): ((0, Fraction(1)),),
                                           (1, 0): ((0, Fraction(1)),)})
        report = validate(broken)
        assert report.verdict == "fail"
        entry = report.entry("antisymmetry")
        assert not entry.passed
        assert entry.detail["pair"] == ["b1", "b2"]

    def test_jacobi_violation(self):
        # [x, y] = x, [x, z] = y: [z, [x, y]] = -y breaks Jacobi
        broken = LieAlgebra.from_brackets(["x", "y", "z"], [(0, 1, {0: 1}), (0, 2, {1: 1})])
        report = validate(broken)
        assert report.entry("antisymmetry").passed
        assert not report.entry("jacobi").passed
        assert report.entry("jacobi").detail["triple"] == ["x", "y", "z"]


class TestSeries:
    def test_kath_olbrich_m2(self):
        dims = [s.dim for s in lower_central_series(kath_olbrich_algebra(2))]
        assert dims == [8, 6, 5, 3, 2, 0]

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_kath_olbrich_step(self, m):
        assert nilpotency_step(kath_olbrich_algebra(m)) == 2 * m + 1

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_kath_olbrich_series_dims(self, m):
        dims = [s.dim for s in lower_central_series(kath_olbrich_algebra(m))]
        expected = [3 * m + 2]
        for r in range(1, m + 1):
            expected += [3 * (m - r + 1), 3 * (m - r) + 2]
        assert dims == expected + [0]

    def test_heisenberg(self, heis3):
        assert [s.dim for s in lower_central_series(heis3)] == [3, 1, 0]
        assert nilpotency_step(heisenberg_algebra(2, 1)) == 2

    def test_heisenberg_derived_is_center_line(self):
        g = heisenberg_algebra(1, 0)
        full = Subspace.full(g.dim)
        assert product_subspace(g, full, full) == Subspace.coordinate(g.dim, [0])

    def test_abelian(self):
        g = LieAlgebra.abelian(4)
        assert [s.dim for s in lower_central_series(g)] == [4, 0]
        assert nilpotency_step(g) == 1

    def test_sl3_not_nilpotent(self):
        assert nilpotency_step(sl3_algebra()) == NOT_NILPOTENT
        assert len(lower_central_series(sl3_algebra())) == 1

    def test_ideal_series_and_is_ideal(self, heis3):
        center = Subspace.coordinate(3, [2])
        assert is_ideal(heis3, center)
        assert not is_ideal(heis3, Subspace.coordinate(3, [0]))
        assert [s.dim for s in ideal_series(heis3, center)] == [1, 0]


class TestKillingForm:
    def test_sl3_signature(self):
        assert signature(killing_form(sl3_algebra())).as_tuple() == (5, 3, 0)

    def test_nilpotent_is_zero(self):
        assert is_zero(killing_form(kath_olbrich_algebra(1)).gram)
        assert is_zero(killing_form(LieAlgebra.abelian(3)).gram)


class TestSemidirectSum:
    def test_heisenberg_by_derivation(self, heis3):
        acting = LieAlgebra.abelian(1)
        g = semidirect_sum(heis3, acting, [fraction_array([[1, 0, 0], [0, 0, 0], [0, 0, 1]])])
        assert g.dim == 4
        assert validate(g).passed
        assert arrays_equal(bracket(g, unit_vector(4, 3), unit_vector(4, 0)), unit_vector(4, 0))

    def test_direct_sum(self):
        g = semidirect_sum(LieAlgebra.abelian(2), LieAlgebra.abelian(1),
                           [fraction_array([[0, 0], [0, 0]])])
        assert len(g.structure) == 0

    def test_not_a_derivation(self, heis3):
        with pytest.raises(DerivationError):
            semidirect_sum(heis3, LieAlgebra.abelian(1),
                           [fraction_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])])

    def test_not_a_homomorphism(self):
        with pytest.raises(HomomorphismError):
            semidirect_sum(LieAlgebra.abelian(2), LieAlgebra.abelian(2),
                           [fraction_array([[0, 1], [0, 0]]), fraction_array([[0, 0], [1, 0]])])

    def test_wrong_action_count(self, heis3):
        with pytest.raises(DimensionMismatchError):
            semidirect_sum(heis3, LieAlgebra.abelian(2), [fraction_array(np.zeros((3, 3), int))])


class TestAlgebraFromMatrices:
    def test_sl2(self):
        e = np.array([[0, 1], [0, 0]])
        f = np.array([[0, 0], [1, 0]])
        h = np.array([[1, 0], [0, -1]])
        g = algebra_from_matrices(["e", "f", "h"], [e, f, h])
        assert arrays_equal(bracket(g, unit_vector(3, 0), unit_vector(3, 1)), unit_vector(3, 2))
        assert validate(g).passed

    def test_not_closed(self):
        with pytest.raises(ValueError):
            algebra_from_matrices(["e", "f"], [np.array([[0, 1], [0, 0]]),
                                               np.array([[0, 0], [1, 0]])])

    def test_dependent(self):
        with pytest.raises(ValueError):
            algebra_from_matrices(["a", "b"], [np.eye(2, dtype=int), 2 * np.eye(2, dtype=int)])


class TestConstructionErrors:
    def test_duplicate_names(self):
        with pytest.raises(InputError):
            LieAlgebra.from_brackets(["x", "x"], [])

    def test_nonzero_self_bracket(self):
        with pytest.raises(InputError):
            LieAlgebra.from_brackets(["x", "y"], [(0, 0, {1: 1})])

    def test_zero_self_bracket_is_ignored(self):
        g = LieAlgebra.from_brackets(["x", "y"], [(1, 1, {0: 0})])
        assert len(g.structure) == 0
