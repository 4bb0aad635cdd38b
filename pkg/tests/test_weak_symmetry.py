"""
Tests for weak_symmetry.py: witness recipes, exact verification and metric families.
"""
from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from catalog import get_entry, metric_blocks
from errors import DimensionMismatchError, UnknownExampleError
from exact import arrays_equal, fraction_array, identity, zeros, zeros_matrix
from weak_symmetry import (ReversalWitness, check_metric_family, metric_family_independence,
                           quaternion_conjugate, quaternion_multiply, verify_witness,
                           weak_symmetry_survey, witness_for)


def diagonal(entries):
    matrix = zeros_matrix(len(entries), len(entries))
    for i, value in enumerate(entries):
        matrix[i, i] = Fraction(value)
    return matrix


class TestQuaternions:
    def test_units(self):
        one, i, j, k = ([Fraction(int(a == b)) for b in range(4)] for a in range(4))
        assert quaternion_multiply(i, j) == tuple(k)
        assert quaternion_multiply(j, i) == tuple(-c for c in k)
        assert quaternion_multiply(i, i) == tuple(-c for c in one)

    def test_conjugate_gives_norm(self):
        q = [Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]
        assert quaternion_multiply(q, quaternion_conjugate(q)) == (15, 0, 0, 0)


class TestVerifyWitness:
    def test_minus_identity_always_works(self, lorentzian_sl2):
        witness = ReversalWitness(-identity(2), "minus identity")
        assert verify_witness(lorentzian_sl2, witness, fraction_array([1, 3])).passed

    def test_identity_does_not_reverse(self, lorentzian_sl2):
        report = verify_witness(lorentzian_sl2, ReversalWitness(identity(2), "identity"),
                                fraction_array([1, 0]))
        assert not report.entry("reversal").passed
        assert report.entry("isometry").passed
        assert report.verdict == "fail"

    def test_shape_mismatch(self, lorentzian_sl2):
        with pytest.raises(DimensionMismatchError):
            verify_witness(lorentzian_sl2, ReversalWitness(identity(3), "wrong"), zeros(2))


class TestRecipes:
    def test_heisenberg_is_minus_identity(self):
        xi = fraction_array([2, 1, -1])
        witness = witness_for("heisenberg", {"p": 1, "q": 0}, xi)
        assert arrays_equal(witness.W, -identity(3))
        space = get_entry("heisenberg", {"p": 1, "q": 0}).space
        assert verify_witness(space, witness, xi).passed

    def test_unitary_sphere(self):
        xi = fraction_array([1, 1, 0])
        space = get_entry("sphere-un", {"n": 2}).space
        assert verify_witness(space, witness_for("sphere_un", {"n": 2}, xi), xi).passed

    def test_symplectic_sphere_example(self):
        xi = fraction_array([1, 0, 0, 1, 0, 0, 0])
        witness = witness_for("sp1-spn", {"n": 2}, xi)
        assert arrays_equal(witness.W, diagonal([-1, 1, -1, -1, -1, -1, -1]))
        assert "(1)j" in witness.description
        space = get_entry("sp1-spn", {"n": 2}).space
        assert verify_witness(space, witness, xi).passed

    def test_symplectic_sphere_zero_vector(self):
        witness = witness_for("sp1-spn", {"n": 2}, zeros(7))
        assert "w = 0" in witness.description
        space = get_entry("sp1-spn", {"n": 2}).space
        assert verify_witness(space, witness, zeros(7)).passed

    @given(st.lists(st.integers(-2, 2), min_size=7, max_size=7))
    @settings(max_examples=40, deadline=None)
    def test_symplectic_sphere_random(self, coords):
        xi = fraction_array(coords)
        space = get_entry("sp1-spn", {"n": 2, "a": 1, "b": -1}).space
        witness = witness_for("sp1-spn", {"n": 2, "a": 1, "b": -1}, xi)
        assert verify_witness(space, witness, xi).passed

    @given(st.lists(st.integers(-2, 2), min_size=11, max_size=11))
    @settings(max_examples=20, deadline=None)
    def test_symplectic_sphere_n3(self, coords):
        xi = fraction_array(coords)
        space = get_entry("sp1-spn", {"n": 3}).space
        assert verify_witness(space, witness_for("sp1-spn", {"n": 3}, xi), xi).passed

    def test_no_recipe(self):
        with pytest.raises(UnknownExampleError):
            witness_for("kath-olbrich", {"m": 1}, zeros(5))

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatchError):
            witness_for("heisenberg", {"p": 1, "q": 0}, zeros(4))


class TestMetricFamily:
    def test_heisenberg_all_pairs(self):
        report = metric_family_independence("heisenberg", {"p": 1, "q": 1},
                                            fraction_array([1, 0, 2, -1, 1]))
        assert report.passed
        assert report.entry("grid").detail["pairs_checked"] == 16

    def test_unitary_sphere(self):
        assert metric_family_independence("sphere-un", {"n": 3},
                                          fraction_array([0, 1, 1, 2, -1])).passed

    def test_block_mixing_witness_fails(self):
        swap = identity(5)
        swap[0, 0], swap[1, 1] = Fraction(0), Fraction(0)
        swap[0, 1], swap[1, 0] = Fraction(1), Fraction(1)
        report = check_metric_family(ReversalWitness(swap, "swap z and x1"),
                                     metric_blocks("heisenberg", {"p": 1, "q": 1}))
        assert not report.passed
        assert not report.entry("block_1_preserved").passed


class TestSurvey:
    @pytest.mark.parametrize("example_id,params", [
        ("heisenberg", {"p": 1, "q": 1, "a": 2, "b": -1}),
        ("sphere-un", {"n": 2}),
        ("sp1-spn", {"n": 2, "a": -1, "b": 1}),
    ])
    def test_passes(self, example_id, params):
        report = weak_symmetry_survey(example_id, params, samples=4, seed=9)
        assert report.passed
        assert report.seed == 9
        assert report.samples == 4
        assert report.entry("witnesses").detail["tested"] == \
            get_entry(example_id, params).space.dim + 4

    def test_no_recipe(self):
        with pytest.raises(UnknownExampleError):
            weak_symmetry_survey("sl3-killing", {}, samples=1, seed=0)


@pytest.mark.slow
class TestSurveyAtScale:
    @pytest.mark.parametrize("example_id,params", [
        *[("heisenberg", {"p": p, "q": q}) for p in range(3) for q in range(3) if p + q >= 1],
        *[("sphere-un", {"n": n}) for n in (2, 3, 4)],
        *[("sp1-spn", {"n": n}) for n in (2, 3)],
    ])
    def test_hundred_samples(self, example_id, params):
        report = weak_symmetry_survey(example_id, params, samples=100, seed=21)
        assert report.passed
        assert report.entry("witnesses").detail["failures"] == []
        assert report.entry("metric_family").detail["grid"] == [-2, -1, 1, 2]
