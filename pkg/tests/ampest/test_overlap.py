from __future__ import annotations

import numpy as np
import pytest

from qdisttest.ampest.overlap import (
    StatePreparation,
    estimate_overlap_magnitude,
    flag_probability,
    overlap_estimate,
    overlap_iterations,
)
from qdisttest.core.linalg import as_complex
from qdisttest.core.states import PureState
from qdisttest.oracles.counter import QueryCost, QueryCounter


def test_overlap_estimate():
    c1, c2 = QueryCounter("s1"), QueryCounter("s2")
    p1 = StatePreparation(PureState(as_complex([1.0, 0.0]), (2,)), QueryCost.of(c1))
    p2 = StatePreparation(PureState(as_complex([0.6, 0.8j]), (2,)), QueryCost.of(c2))
    est = overlap_estimate(p1, p2, 10, None, np.random.default_rng(0), "exact")
    assert est.exact == pytest.approx(0.6)
    assert est.value == pytest.approx(0.6)
    assert est.queries_charged == 2 * 10 * 2
    assert (c1.forward, c1.inverse, c2.forward, c2.inverse) == (10, 10, 10, 10)


def test_overlap_estimate_semantic():
    s = PureState(as_complex([0.6, 0.8]), (2,))
    prep = StatePreparation(s, QueryCost())
    M = overlap_iterations(0.05)
    est = overlap_estimate(prep, prep, M, 0.01, np.random.default_rng(3))
    assert abs(est.value - 1.0) <= 0.05


def test_overlap_estimate_invalid():
    s1 = StatePreparation(PureState(as_complex([1.0, 0.0]), (2,)), QueryCost())
    s2 = StatePreparation(PureState(as_complex([1.0, 0.0, 0.0]), (3,)), QueryCost())
    with pytest.raises(ValueError) as e:
        overlap_estimate(s1, s2, 4, None, np.random.default_rng(0))
    assert "differ" in str(e.value)


def test_estimate_overlap_magnitude():
    est = estimate_overlap_magnitude(0.5, QueryCost(), 8, None, np.random.default_rng(0), "exact")
    assert est.amplitude.value == pytest.approx(0.25)
    assert est.value == pytest.approx(0.5)


def test_overlap_iterations():
    assert overlap_iterations(0.1) == 32
    with pytest.raises(ValueError) as e:
        overlap_iterations(0.0)
    assert "must be positive" in str(e.value)


def test_flag_probability():
    amps = as_complex([0.6, 0.0, 0.0, 0.8])
    state = PureState(amps, (2, 2), flag_registers=(1,))
    exact, est = flag_probability(state, 8, None, np.random.default_rng(0), "exact")
    assert exact == pytest.approx(0.36)
    assert est.value == pytest.approx(0.36)
    with pytest.raises(ValueError) as e:
        flag_probability(PureState(amps, (2, 2)), 8, None, np.random.default_rng(0))
    assert "has no flag register" in str(e.value)
