import pytest

from qdisttest.core.generate import generate


@pytest.fixture(scope="module")
def rho_pair():
    return generate("haar-random-density", n=3, rank=2, seed=1), generate("haar-random-density", n=3, seed=2)


@pytest.fixture(scope="module")
def p_quarter():
    return generate("two-point", delta=0.25)
