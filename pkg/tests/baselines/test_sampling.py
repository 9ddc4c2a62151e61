from __future__ import annotations

import math

import numpy as np
import pytest

from qdisttest.baselines.sampling import BASELINES, SampleBudget, collision_l2, plugin_entropy
from qdisttest.core.states import ClassicalDistribution


def test_budget_invalid():
    with pytest.raises(ValueError) as e:
        SampleBudget(0)
    assert "samples=0 must be positive." in str(e.value)


param_plugin_entropy = [
    (np.array([0.0, 1.0, 0.0]), 10, 0.0, 1e-15),
    (np.full(4, 0.25), 20000, math.log(4.0), 0.01),
    (ClassicalDistribution([0.5, 0.5]), 20000, math.log(2.0), 0.01),
]


@pytest.mark.parametrize("p, samples, expected, atol", param_plugin_entropy)
def test_plugin_entropy(p, samples: int, expected: float, atol: float):
    assert plugin_entropy(p, SampleBudget(samples, seed=1)) == pytest.approx(expected, abs=atol)


def test_plugin_entropy_seed():
    p = np.array([0.5, 0.3, 0.2])
    a = plugin_entropy(p, SampleBudget(50, seed=7))
    b = plugin_entropy(p, SampleBudget(50, seed=7))
    assert a == b


def test_collision_l2_disjoint():
    # all draws of p land on 0 and all draws of q on 1
    assert collision_l2([1.0, 0.0], [0.0, 1.0], SampleBudget(30)) == pytest.approx(2.0)


def test_collision_l2_unbiased():
    p, q = np.array([0.9, 0.1]), np.array([0.1, 0.9])
    values = [collision_l2(p, q, SampleBudget(100, seed=s)) for s in range(200)]
    assert np.mean(values) == pytest.approx(np.sum((p - q) ** 2), abs=0.05)


param_collision_l2_invalid = [
    ([0.5, 0.5], [0.5, 0.5], 1, "requires at least 2 samples"),
    ([0.5, 0.5], [0.2, 0.3, 0.5], 10, "dimension mismatch: 2 != 3."),
]


@pytest.mark.parametrize("p, q, samples, msg", param_collision_l2_invalid)
def test_collision_l2_invalid(p: list, q: list, samples: int, msg: str):
    with pytest.raises(ValueError) as e:
        collision_l2(np.array(p), np.array(q), SampleBudget(samples))
    assert msg in str(e.value)


def test_baselines_table():
    assert BASELINES["plugin_entropy"] is plugin_entropy
    assert BASELINES["collision_l2"] is collision_l2
