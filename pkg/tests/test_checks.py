"""Verification-suite plumbing: result records, selection, reports."""

import json
from fractions import Fraction

import numpy as np
import pytest

from dosusy.checks import (
    SUITE_NAMES,
    CheckResult,
    exit_code,
    report_json,
    run_suites,
)


def test_suite_registry_names():
    assert SUITE_NAMES == (
        "riccati", "partner", "eigenvalue", "wavefunction", "critical",
        "family", "audit", "annihilation", "closure", "degeneracy", "figures",
    )


def test_result_serialization_handles_numpy_and_fractions():
    res = CheckResult(
        check_id="demo:one",
        params={"kappa": Fraction(1, 2), "l": np.int64(3),
                "flag": np.bool_(True), "dev": np.float64(0.25)},
        measured=float(np.float64(1e-12)),
        threshold=1e-10,
        passed=True,
    )
    d = res.to_dict()
    assert set(d) == {"check_id", "params", "measured", "threshold", "pass"}
    # every leaf must be a plain JSON type
    payload = json.dumps(d)
    back = json.loads(payload)
    assert back["pass"] is True
    assert back["params"]["l"] == 3
    assert back["params"]["flag"] is True


def test_informative_results_do_not_gate():
    ok = CheckResult("a", {}, 0.0, 1.0, True)
    bad_gating = CheckResult("b", {}, 2.0, 1.0, False)
    bad_info = CheckResult("c", {}, 2.0, None, False, informative=True)
    assert exit_code([ok]) == 0
    assert exit_code([ok, bad_info]) == 0
    assert exit_code([ok, bad_gating]) == 1
    assert exit_code([]) == 0


def test_degeneracy_suite_runs_clean():
    results = run_suites(("degeneracy",))
    ids = [r.check_id for r in results]
    assert ids == sorted(ids)
    assert ids == (["degeneracy:kappa=1/2:N=3"]
                   + [f"degeneracy:kappa=1:N={N}" for N in range(1, 7)])
    assert all(r.passed for r in results)


def test_unknown_suite_is_rejected_with_catalog():
    with pytest.raises(ValueError) as info:
        run_suites(("nope",))
    msg = str(info.value)
    assert "nope" in msg
    for name in SUITE_NAMES:
        assert name in msg


def test_selection_merges_and_sorts():
    results = run_suites(("degeneracy", "critical"))
    ids = [r.check_id for r in results]
    assert ids == sorted(ids)
    assert any(i.startswith("critical:") for i in ids)
    assert any(i.startswith("degeneracy:") for i in ids)
    # a bare string is promoted to a single-element selection
    again = run_suites("degeneracy")
    assert [r.check_id for r in again] == [i for i in ids if i.startswith("degeneracy:")]


def test_report_is_canonical_and_reproducible():
    first = report_json(run_suites(("degeneracy",)))
    second = report_json(run_suites(("degeneracy",)))
    assert first == second
    assert first.endswith("\n")
    payload = json.loads(first)
    assert set(payload) == {"checks", "summary"}
    summary = payload["summary"]
    assert set(summary) == {"total", "gating", "informative", "failed", "exit_code"}
    assert summary["total"] == len(payload["checks"])
    assert summary["failed"] == 0
    assert summary["exit_code"] == 0
    for entry in payload["checks"]:
        assert set(entry) == {"check_id", "params", "measured", "threshold", "pass"}
