from __future__ import annotations

import math

import numpy as np
import pytest

from qdisttest.ampest.sample import (
    AE_SUCCESS,
    acceptance_probability,
    ae_boosted,
    ae_distribution,
    ae_error_bound,
    ae_iterations,
    ae_sample,
    boost_repetitions,
    estimate_amplitude,
)
from qdisttest.oracles.counter import QueryCost, QueryCounter

param_ae_distribution = [
    (0.0, 4),
    (0.3, 7),
    (0.5, 16),
    (0.9, 33),
    (1.0, 8),
]


@pytest.mark.parametrize("a, M", param_ae_distribution)
def test_ae_distribution(a: float, M: int):
    values, probs = ae_distribution(a, M)
    assert values.shape == probs.shape == (M,)
    assert abs(probs.sum() - 1.0) < 1e-12
    assert np.all(probs >= 0.0)
    assert np.all((values >= 0.0) & (values <= 1.0))


def test_ae_distribution_exact_cases():
    values, probs = ae_distribution(0.0, 8)
    assert probs[0] == pytest.approx(1.0)
    # sin²(jπ/M) = 1 at j = M/2
    values, probs = ae_distribution(1.0, 8)
    assert probs[4] == pytest.approx(1.0)
    assert values[4] == pytest.approx(1.0)
    values, probs = ae_distribution(0.5, 4)
    assert float(probs[np.isclose(values, 0.5)].sum()) == pytest.approx(1.0)


def test_ae_distribution_invalid():
    with pytest.raises(ValueError) as e:
        ae_distribution(1.5, 4)
    assert "must lie in [0, 1]" in str(e.value)
    with pytest.raises(ValueError) as e:
        ae_distribution(0.5, 0)
    assert "must be at least 1" in str(e.value)


param_ae_success = [
    (0.05, 16),
    (0.3, 32),
    (0.77, 64),
]


@pytest.mark.parametrize("a, M", param_ae_success)
def test_ae_success_rate(a: float, M: int):
    draws = ae_sample(a, M, np.random.default_rng(0), size=4000)
    hit = np.abs(draws - a) <= ae_error_bound(a, M)
    assert hit.mean() >= AE_SUCCESS - 0.03


param_ae_iterations = [
    (0.1, 0.1),
    (0.01, 0.5),
    (0.05, 0.0),
    (1e-3, 1e-3),
]


@pytest.mark.parametrize("tol, a_ref", param_ae_iterations)
def test_ae_iterations(tol: float, a_ref: float):
    M = ae_iterations(tol, a_ref)
    assert ae_error_bound(a_ref, M) <= tol * (1 + 1e-12)
    if M > 1:
        assert ae_error_bound(a_ref, M - 1) > tol


def test_ae_iterations_invalid():
    with pytest.raises(ValueError) as e:
        ae_iterations(0.0, 0.1)
    assert "tol=0.0 must be positive" in str(e.value)


def test_boost_repetitions():
    assert boost_repetitions(None) == 1
    assert boost_repetitions(0.1) == 2 * math.ceil(18 * math.log(10)) + 1
    assert boost_repetitions(0.01) % 2 == 1
    with pytest.raises(ValueError) as e:
        boost_repetitions(1.5)
    assert "nu_fail=1.5 must lie in (0, 1)" in str(e.value)


def test_ae_boosted():
    c = QueryCounter()
    est = ae_boosted(0.3, 64, 0.1, np.random.default_rng(1), QueryCost.of(c))
    assert est.trials == boost_repetitions(0.1)
    assert est.queries_charged == 2 * 64 * est.trials
    assert (c.forward, c.inverse) == (64 * est.trials, 64 * est.trials)
    assert abs(est.value - 0.3) <= ae_error_bound(0.3, 64)


def test_estimate_amplitude():
    c = QueryCounter()
    est = estimate_amplitude(0.4, 8, None, np.random.default_rng(0), "exact", QueryCost.of(c) * 2)
    assert est.value == 0.4
    assert est.queries_charged == 2 * 8 * 2
    assert c.total == 32
    # without a cost only the Grover powers are counted
    est = estimate_amplitude(0.4, 8, None, np.random.default_rng(0), "semantic")
    assert est.queries_charged == 8
    with pytest.raises(ValueError) as e:
        estimate_amplitude(0.4, 8, None, np.random.default_rng(0), "fast")
    assert "mode=fast must be one of" in str(e.value)


def test_estimate_amplitude_reproducible():
    a = [estimate_amplitude(0.2, 16, 0.1, np.random.default_rng(5)).value for _ in range(2)]
    assert a[0] == a[1]


def test_acceptance_probability():
    assert acceptance_probability(0.0, 16, 0.1, 1) == 0.0
    assert acceptance_probability(0.3, 64, 0.2, 1) >= AE_SUCCESS
    # boosting sharpens the decision
    single = acceptance_probability(0.3, 64, 0.2, 1)
    assert acceptance_probability(0.3, 64, 0.2, 41) > single


param_ae_coverage = [(a, M) for a in (0.0, 0.05, 0.2, 0.5, 0.8, 0.95) for M in (4, 16, 64, 256)]


@pytest.mark.parametrize("a, M", param_ae_coverage)
def test_ae_coverage(a: float, M: int):
    draws = ae_sample(a, M, np.random.default_rng(17), size=10_000)
    assert (np.abs(draws - a) <= ae_error_bound(a, M)).mean() >= AE_SUCCESS - 0.02


@pytest.mark.slow
def test_ae_boosted_failure_rate():
    rng = np.random.default_rng(23)
    bound = ae_error_bound(0.3, 64)
    hits = [abs(ae_boosted(0.3, 64, 0.01, rng).value - 0.3) <= bound for _ in range(10_000)]
    assert np.mean(hits) >= 0.99
