"""Seven headline checks, one per release criterion, each printing a single
PASS/FAIL line (run ``pytest -s tests/test_acceptance.py`` to see them all).

They call the same suites the ``accept`` subcommand exposes, at full scale,
and enforce the wall-clock budgets those runs are expected to meet.

Known failure: criterion 4 is red.  The complete-bipartite family is claimed
to avoid cycles of length 2*ell mod k for every ell in {3,4,5} and
ell < k <= 8, but K_{4,m} (ell=5) contains a 4-cycle and 4 == 10 mod 6, so
the claim is false at exactly (ell=5, k=6).  The companion test below pins
the failure to that single pair; every other case holds.
"""

from __future__ import annotations

import time

import pytest

from cyclemod.acceptance import (
    suite_constructions,
    suite_end_to_end,
    suite_engine_props,
    suite_extremal_table,
    suite_oracle_equiv,
    suite_theta_lemma,
)
from cyclemod.graphs import gen_complete_bipartite
from cyclemod.oracle import ResidueQuery, has_cycle_mod


def _report(label, results, elapsed=None):
    """Print the one-line verdict for a criterion, then assert it."""
    ok = all(r.passed for r in results)
    passed = sum(1 for r in results if r.passed)
    detail = f"{passed}/{len(results)} checks"
    if elapsed is not None:
        detail += f", {elapsed:.1f}s"
    if not ok:
        first = next(r for r in results if not r.passed)
        detail += f"; first failure {first.name}: {first.detail}"
    print(f"{label}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{label}: {detail}"


def test_criterion_1_oracle_equivalence():
    t0 = time.monotonic()
    results = suite_oracle_equiv(samples=500, seed=0, max_n=8)
    elapsed = time.monotonic() - t0
    _report("criterion 1: oracle equivalence", results, elapsed)
    assert elapsed < 120, f"took {elapsed:.1f}s, budget is 120s"


def test_criterion_2_theta_path_lemma():
    t0 = time.monotonic()
    results = suite_theta_lemma(max_n=10)
    elapsed = time.monotonic() - t0
    _report("criterion 2: theta path lemma", results, elapsed)
    assert elapsed < 300, f"took {elapsed:.1f}s, budget is 300s"


def test_criterion_3_extremal_table():
    results = suite_extremal_table(max_k=8)
    _report("criterion 3: extremal table", results)


def test_criterion_4_lower_bound_constructions():
    # red on purpose: see the module docstring and the companion test below
    results = suite_constructions(max_k=8, max_n=12)
    _report("criterion 4: lower-bound constructions", results)


def test_complete_bipartite_claim_fails_only_at_one_pair():
    """Independent sweep of the same family: the violations are exactly
    K_{4,m} with m >= 2 against modulus 6, and nothing else."""
    violations = set()
    for ell in (3, 4, 5):
        for n in range(ell, 13):
            g = gen_complete_bipartite(ell - 1, n - ell + 1)
            for k in range(ell + 1, 9):
                found = has_cycle_mod(g, ResidueQuery(2 * ell, k))
                assert found.exhaustive
                if found.witness is not None:
                    assert found.witness.length == 4
                    violations.add((ell, n, k))
    assert violations == {(5, n, 6) for n in range(6, 13)}


def test_criterion_5_engine_properties():
    results = suite_engine_props(samples=200, seed=0, max_n=12)
    _report("criterion 5: engine properties", results)


@pytest.fixture(scope="module")
def end_to_end():
    t0 = time.monotonic()
    results = suite_end_to_end(p=149, k=4, ell=4)
    return results, time.monotonic() - t0


def test_criterion_6_end_to_end_guarantee_run(end_to_end):
    results, elapsed = end_to_end
    headline = [r for r in results if r.name != "end-to-end-cascade"]
    _report("criterion 6: end-to-end guarantee run", headline, elapsed)
    assert elapsed < 600, f"took {elapsed:.1f}s, budget is 600s"


def test_criterion_7_stage_constant_cascade(end_to_end):
    results, _ = end_to_end
    cascade = [r for r in results if r.name == "end-to-end-cascade"]
    assert cascade, "the end-to-end suite did not audit the cascade"
    _report("criterion 7: stage-constant cascade", cascade)
