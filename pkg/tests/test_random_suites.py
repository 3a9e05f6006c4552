"""Randomized theorem instances; the suites themselves live in theorem_suites."""
from theorem_suites import bialgebra_suite, converse_algebra_suite, quasi_frobenius_suite, triangular_suite


def test_triangular_leibniz_bialgebras_induce_lie_bialgebras():
    tally = triangular_suite()
    assert tally["instances"] >= 101
    assert tally["o_fail_leibniz"] and tally["o_fail_lie"]


def test_converse_algebra_detector():
    tally = converse_algebra_suite()
    assert tally["instances"] == 50 and tally["perturbed_non_zinbiel"] >= 10 and tally["zinbiel"]


def test_bialgebra_classification_on_the_two_dimensional_algebra():
    tally = bialgebra_suite()
    assert tally["random_pairs"] == 50 and 0 < tally["random_passing"] < 50
    # k in -2..2 gives five structures, the zero coproduct included
    assert tally["exhaustive"] == 5 ** 8 and tally["exhaustive_passing"] == 5


def test_quasi_frobenius_iff_canonical_r_solves_zybe():
    tally = quasi_frobenius_suite()
    assert tally["forms"] >= 50 and tally["passing"] and tally["failing"]
