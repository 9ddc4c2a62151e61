import pytest

from qdisttest.core.generate import DirichletRandom, Zipf
from qdisttest.testers import entropy_classical, l2_quantum
from qdisttest.utils import resolve

param_generator_resolver = [
    ("dirichlet-random", DirichletRandom),
    ("DirichletRandom", DirichletRandom),
    ("dirichlet_random", DirichletRandom),
    (Zipf, Zipf),
]


@pytest.mark.parametrize("query, cls", param_generator_resolver)
def test_generator_resolver(query, cls: type):
    gen = resolve.generator_resolver(query, n=4)
    assert isinstance(gen, cls)
    assert gen.n == 4


param_tester_resolver = [
    ("entropy_classical", entropy_classical),
    ("Entropy-Classical", entropy_classical),
    ("l2 quantum", l2_quantum),
    (l2_quantum, l2_quantum),
]


@pytest.mark.parametrize("query, fn", param_tester_resolver)
def test_tester_resolver(query, fn):
    assert resolve.tester_resolver(query) is fn


param_resolver_invalid = [
    (resolve.generator_resolver, "pareto", "pareto not found"),
    (resolve.tester_resolver, "kl_divergence", "kldivergence not found"),
    (resolve.generator_resolver, 3, "3 must be str or type or callable"),
]


@pytest.mark.parametrize("resolver, query, msg", param_resolver_invalid)
def test_resolver_invalid(resolver, query, msg: str):
    with pytest.raises(ValueError) as e:
        resolver(query)
    assert msg in str(e.value)
