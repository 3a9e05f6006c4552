"""Symbolic verdicts against the degree-window truncation on [-3, 3]."""
import pytest

from zinleib import linalg as la
from zinleib import window
from zinleib.graded import CompletedCoproduct, check_completed_identity

from theorem_suites import graded_contexts, window_suite


@pytest.fixture(scope="module")
def corpus_contexts():
    return graded_contexts()


def contexts(c):
    return [("LeibnizCo", {"coproduct": c["theta"]}), ("LieCo", {"coproduct": c["delta"]}),
            ("LieBi-cocycle", {"algebra": c["g"], "cobracket": c["delta"]}),
            ("CYBE", {"algebra": c["g"], "r": c["rh"]}),
            ("Lie-invariance", {"algebra": c["g"], "r": c["rh"] + c["rh"].swap()})]


def test_window_agrees_on_corpus(corpus_contexts):
    for kind, ctx in contexts(corpus_contexts):
        sym = check_completed_identity(kind, **ctx).passed
        assert sym and window.verdict(kind, **ctx) == sym, kind


def test_both_engines_list_defects_for_a_bumped_coproduct(corpus_contexts):
    theta = corpus_contexts["theta"]
    d = la.zeros((4, 4, 4))
    d[0, 0, 0] = la.ONE  # v1 t^i -> ... + sum_j v1 t^j (x) v1 t^(i-j)
    extra = CompletedCoproduct.uniform(d, 0, theta.labels)
    bumped = CompletedCoproduct(tuple(a + b for a, b in zip(theta.images, extra.images)), theta.labels)
    sym = check_completed_identity("LeibnizCo", coproduct=bumped)
    win = window.coidentity_defects(bumped)
    assert not sym.passed and win
    # the window sees a defect at v1 t^i for every outer degree i
    assert {i for k, i in win if k == 0} == set(window.OUTER)


def test_window_agrees_on_perturbed_instances():
    tally = window_suite()
    assert tally["failing"] >= 20 and all(tally["failing_by_kind"].values())
