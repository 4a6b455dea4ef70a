import json

import pytest

from cpnsurf.suite import (NEG_THRESHOLD, REGISTRY, IdentityCase, keyed_rng, registry_coverage, reports_to_json,
                           run_suite, suite_exit_code)


def test_keyed_rng_is_order_free():
    a = keyed_rng(7, "chain.el", 3, 4).uniform()
    keyed_rng(7, "chain.el", 3, 3).uniform()
    assert keyed_rng(7, "chain.el", 3, 4).uniform() == a
    assert keyed_rng(7, "chain.lax", 3, 4).uniform() != a


def test_same_seed_same_bytes():
    a = reports_to_json(run_suite("surf.", seed=11, samples_per_case=3))
    b = reports_to_json(run_suite("surf.", seed=11, samples_per_case=3))
    assert a == b


def test_subset_reproduces_full_numbers():
    full = {r.id: r for r in run_suite("chain.", seed=5, samples_per_case=2)}
    one = run_suite("chain.el", seed=5, samples_per_case=2)[0]
    assert one.max_residual == full["chain.el"].max_residual


def test_report_schema():
    d = json.loads(reports_to_json(run_suite("proj.sandwich", samples_per_case=2)))[0]
    assert set(d) == {"id", "anchor", "samples", "max_residual", "min_residual", "tolerance", "pass", "seed",
                      "negative", "expected_outcome", "note"}
    assert d["samples"] == 2 * 3


def test_negative_controls_are_detected():
    reports = run_suite("NEG.", samples_per_case=5)
    assert reports and all(r.negative and r.expected_outcome and r.min_residual > NEG_THRESHOLD for r in reports)
    # failing negatives do not change the exit code
    assert suite_exit_code(reports) == 0


def test_unknown_filter_is_empty(caplog):
    assert run_suite("nothing.here") == []
    assert "no case id" in caplog.text


def test_tolerance_override_fails_cases():
    reports = run_suite("chain.el", samples_per_case=2, tolerance=1e-300)
    assert not reports[0].passed and suite_exit_code(reports) == 1


def test_coverage_and_ids():
    cov = registry_coverage()
    ids = [c.id for c in REGISTRY]
    assert len(ids) == len(set(ids))
    assert sum(len(v) for v in cov.values()) == len(REGISTRY)
    surf = {c.anchor for c in REGISTRY if c.id.startswith("surf.")}
    assert len(surf) == 12


def test_bad_tolerance_rejected():
    with pytest.raises(ValueError):
        IdentityCase("x", "y", lambda s: 0.0, tolerance=0.0)
    with pytest.raises(ValueError):
        run_suite(samples_per_case=0)
