import numpy as np
import pytest
import torch

from qdisttest.core.generate import generate
from qdisttest.core.states import ClassicalDistribution, DensityOperator


@pytest.fixture(scope="module")
def far_pair():
    return ClassicalDistribution([0.9, 0.1]), ClassicalDistribution([0.1, 0.9])


@pytest.fixture(scope="module")
def orthogonal_states():
    return DensityOperator(np.diag([1.0, 0.0])), DensityOperator(np.diag([0.0, 1.0]))


@pytest.fixture(scope="module")
def random_states():
    return generate("haar-random-density", n=3, seed=21), generate("haar-random-density", n=3, rank=1, seed=22)


@pytest.fixture(scope="module")
def plus_state():
    v = torch.tensor([1.0, 1.0], dtype=torch.complex128) / np.sqrt(2.0)
    return DensityOperator(torch.outer(v, v.conj()))
