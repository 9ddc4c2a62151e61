import pytest

from qdisttest.core.generate import generate
from qdisttest.oracles.oracle import purify_classical, purify_density


@pytest.fixture(scope="module")
def classical_oracle():
    return purify_classical(generate("zipf", n=4, s=1.0))


@pytest.fixture(scope="module")
def density_oracle():
    return purify_density(generate("haar-random-density", n=3, rank=2, seed=5))
