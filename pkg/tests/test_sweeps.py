import json

import numpy as np
import pytest

from cantortree.sweeps import (
    MARGIN_FLOOR,
    dilatation_sweep,
    lemma_report,
    log_uniform,
    quad_p_sweep,
    relative_length_sweep,
    trig_sweep,
)


@pytest.fixture(scope="module")
def report():
    return lemma_report(0, 2000)


def test_report_passes(report):
    assert report["pass"]
    assert report["relative_length"]["min_margin"] >= MARGIN_FLOOR
    assert len(report["relative_length"]["cases"]) == 60


def test_report_deterministic(report):
    again = lemma_report(0, 2000)
    assert json.dumps(again, sort_keys=True) == json.dumps(report, sort_keys=True)


def test_log_uniform_range():
    x = log_uniform(np.random.default_rng(0), 1e-6, 2.0, 10_000)
    assert x.min() >= 1e-6 and x.max() <= 2.0
    # log-uniform: the median sits near the geometric mean
    assert np.median(x) == pytest.approx(np.sqrt(2e-6), rel=0.2)


def test_quad_p_estimates_and_limit(report):
    est = report["quad_p_estimates"]
    assert est["limit_ok"] and est["b1_bound_ok"] and est["denom_ok"]
    assert abs(est["b1_bound_limit_at_1e-6"] - 0.88137) < 1e-4


def test_trig_signs():
    rep = trig_sweep(40, 41)
    assert rep["pass"] and rep["mismatches"] == 0
    assert rep["max_abs_gap_at_A_1"] < 1e-14


def test_dilatation_grid():
    rep = dilatation_sweep(5, 9)
    assert rep["pass"]
    assert rep["max_rel_dev_cosh"] < 1e-12 and rep["max_fd_mismatch"] < 1e-5


def test_relative_length_restricted_sweep_and_precondition():
    rep = relative_length_sweep(np.random.default_rng(0), 50, levels=(20,), c2_values=(0.5,))
    assert rep["pass"] and len(rep["cases"]) == 1
    from cantortree.errors import PreconditionError
    from cantortree.hyptrig import relative_length_margin

    with pytest.raises(PreconditionError):
        relative_length_margin(1.0, 1.5, 1e-3, 0.5, 20)


def test_quad_p_small_sample():
    rep = quad_p_sweep(np.random.default_rng(3), 5)
    assert rep["samples"] == 5 and rep["pass"]


def test_count_validation():
    with pytest.raises(ValueError):
        lemma_report(0, 0)
