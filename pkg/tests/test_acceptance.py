"""Full-scale acceptance criteria, each timed against its budget.

Run with ``pytest -m acceptance -s`` to see one PASS/FAIL line per criterion.
"""
import time

import pytest

from cnckit.checks import run_suite

CRITERIA = [
    ("C1", "boolean", 60, "boolean closure over five ordered groups"),
    ("C2", "canonical", 30, "canonical form soundness"),
    ("C3", "subgroup", 10, "subgroup reduction to minimal modulus"),
    ("C4", "rn", 30, "closed-form R_n against its definition"),
    ("C5", "decompose", 120, "decomposition and the convex equivalence"),
    ("C6", "pullback", 30, "quotient pullback on boxes"),
    ("C7", "cyclic", 120, "cyclic order axioms and universal cover"),
    ("C8", "arc", 60, "arc-set boolean algebra"),
    ("C9", "padic", 60, "n-th powers and power indices over Q_p"),
    ("C10", "quadirr", 30, "exact quadratic irrational decisions"),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("label,suite,limit,what", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, suite, limit, what):
    t0 = time.perf_counter()
    rep = run_suite(suite, seed=0, scale=1.0)
    elapsed = time.perf_counter() - t0
    ok = rep.failed == 0 and elapsed < limit
    print(f"\n{label} {'PASS' if ok else 'FAIL'} {suite}: {rep.cases} cases, "
          f"{rep.failed} failed, {elapsed:.1f}s (limit {limit}s) - {what}")
    if rep.failed:
        first = rep.failures[0]
        pytest.fail(f"{label}: {rep.failed} failures; first: {first}")
    assert elapsed < limit, f"{label}: {elapsed:.1f}s exceeds {limit}s"
