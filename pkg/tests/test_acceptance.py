"""One test per acceptance criterion; each prints a single PASS/FAIL line.

The lines are also collected by conftest and repeated in the terminal summary.
Run ``python tests/test_acceptance.py`` to print them without pytest.
"""
import io
import json
from contextlib import redirect_stdout

import pytest

from zinleib.cli import main

import conftest
from theorem_suites import (bialgebra_suite, converse_algebra_suite, quasi_frobenius_suite, triangular_suite,
                            window_suite)


def _record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus_runs(tmp_path_factory):
    """Two consecutive machine reports: one written by `report`, one printed by `corpus verify`."""
    path = tmp_path_factory.mktemp("acceptance") / "report.json"
    with redirect_stdout(io.StringIO()):
        first = main(["report", "--out", str(path)])
    with redirect_stdout(io.StringIO()) as out:
        second = main(["--format", "json", "corpus", "verify"])
    return first, path.read_bytes(), second, out.getvalue().encode()


@pytest.fixture(scope="module")
def corpus_checks(corpus_runs):
    return json.loads(corpus_runs[1])["checks"]


def _summary(checks) -> tuple[bool, str]:
    bad = [c["name"] for c in checks if c["status"] != "pass"]
    return bool(checks) and not bad, f"{len(checks) - len(bad)}/{len(checks)} checks" + (
        f"; failing: {', '.join(bad)}" if bad else "")


def _is_window(c) -> bool:
    return "window truncation" in c["name"]


def _is_sweep(c) -> bool:
    return c["name"].startswith("sweep ")


def test_criterion_1_corpus_reproduction(corpus_checks):
    ok, detail = _summary([c for c in corpus_checks if not _is_window(c) and not _is_sweep(c)])
    _record(1, "corpus reproduction", ok, detail)


def test_criterion_2_theorem_instance_suites():
    parts = []
    try:
        t = triangular_suite()
        parts.append(f"{t['instances']} triangular instances, {t['o_fail_leibniz']}+{t['o_fail_lie']} "
                     "constructed O-operator failures")
        c = converse_algebra_suite()
        parts.append(f"{c['instances']} converse algebra checks with {c['perturbed_non_zinbiel']} non-Zinbiel")
        b = bialgebra_suite()
        parts.append(f"{b['random_pairs']} random bialgebra pairs, {b['exhaustive_passing']} of "
                     f"{b['exhaustive']} exhaustive coproducts are bialgebras")
        q = quasi_frobenius_suite()
        parts.append(f"{q['forms']} quasi-Frobenius forms ({q['passing']} pass)")
        ok = (t["instances"] >= 101 and t["o_fail_leibniz"] and t["o_fail_lie"]
              and c["instances"] == 50 and c["perturbed_non_zinbiel"] >= 10
              and b["random_pairs"] == 50 and b["exhaustive_passing"] == 5
              and q["forms"] >= 50 and q["passing"] and q["failing"])
    except AssertionError as err:
        ok, parts = False, parts + [f"counterexample: {err}"]
    _record(2, "theorem instance suites", bool(ok), "; ".join(parts))


def test_criterion_3_axiom_sweeps(corpus_checks):
    ok, detail = _summary([c for c in corpus_checks if _is_sweep(c)])
    _record(3, "axiom sweeps", ok, detail)


def test_criterion_4_symbolic_vs_truncation(corpus_checks):
    ok, detail = _summary([c for c in corpus_checks if _is_window(c)])
    try:
        w = window_suite()
        ok = ok and w["failing"] >= 20 and all(w["failing_by_kind"].values())
        detail += f"; {w['instances']} perturbed instances agree, {w['failing']} of them failing"
    except AssertionError as err:
        ok, detail = False, f"{detail}; disagreement on {err}"
    _record(4, "symbolic vs window truncation", ok, detail)


def test_criterion_5_determinism(corpus_runs):
    first, a, second, b = corpus_runs
    ok = first == 0 and second == 0 and a == b
    _record(5, "byte-identical corpus reports", ok, f"{len(a)} and {len(b)} bytes, exit codes {first}, {second}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
