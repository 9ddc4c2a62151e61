from __future__ import annotations

import math

import numpy as np
import pytest
import torch

from qdisttest.core.functional import partial_trace
from qdisttest.core.generate import generate
from qdisttest.core.linalg import DTYPE, as_complex, basis_vector, haar_unitary, is_unitary
from qdisttest.core.states import ClassicalDistribution, DensityOperator
from qdisttest.oracles.oracle import from_discrete_query, from_pure_state_oracle, purify_classical, purify_density

param_purify_classical = [
    ([1.0]),
    ([0.25, 0.75]),
    ([0.1, 0.2, 0.3, 0.4]),
    ([0.0, 0.5, 0.5]),
]


@pytest.mark.parametrize("probs", param_purify_classical)
def test_purify_classical(probs: list):
    p = ClassicalDistribution(probs)
    o = purify_classical(p)
    assert is_unitary(o.unitary)
    assert torch.allclose(o.unitary[:, 0], o.purification.amplitudes, atol=1e-12)
    assert torch.allclose(o.marginal().matrix, torch.diag(as_complex(probs)), atol=1e-12)


def test_purify_classical_layout(p_quarter):
    o = purify_classical(p_quarter)
    assert torch.allclose(o.purification.amplitudes, as_complex([math.sqrt(0.75), 0.0, 0.0, 0.5]), atol=1e-15)


def test_purify_density(rho_pair):
    for rho in rho_pair:
        o = purify_density(rho)
        assert is_unitary(o.unitary)
        assert torch.allclose(o.marginal().matrix, rho.matrix, atol=1e-10)


def test_purify_density_pure():
    v = as_complex([0.6, 0.8j])
    o = purify_density(DensityOperator(torch.outer(v, v.conj())))
    t = o.purification.tensor()
    assert torch.allclose(t[1:].abs(), torch.zeros((1, 2), dtype=torch.float64), atol=1e-12)
    assert abs(abs(torch.vdot(t[0], v).item()) - 1.0) < 1e-12


param_purify_density_rank = [(4, 1), (4, 2), (8, 3)]


@pytest.mark.parametrize("n, rank", param_purify_density_rank)
def test_purify_density_rank(n: int, rank: int):
    o = purify_density(generate("haar-random-density", n=n, rank=rank, seed=n + rank))
    t = o.purification.tensor()
    assert torch.count_nonzero(t[rank:]) == 0
    assert abs(torch.linalg.vector_norm(t).item() - 1.0) < 1e-14


def test_purify_density_maximally_mixed():
    o = purify_density(generate("maximally-mixed", n=2))
    s = torch.linalg.svdvals(o.purification.tensor())
    assert torch.allclose(s, torch.full((2,), 1 / math.sqrt(2), dtype=torch.float64), atol=1e-12)


param_from_discrete_query = [
    ([0, 0, 0, 0], 3, [1.0, 0.0, 0.0]),
    ([0, 0, 1, 2], 3, [0.5, 0.25, 0.25]),
    ([2, 1], None, [0.0, 0.5, 0.5]),
]


@pytest.mark.parametrize("f, n, expected", param_from_discrete_query)
def test_from_discrete_query(f: list, n: int | None, expected: list):
    o = from_discrete_query(f, n)
    assert np.allclose(o.probabilities(), expected)
    assert is_unitary(o.unitary)
    assert torch.allclose(o.unitary @ basis_vector(o.dim), o.purification.amplitudes, atol=1e-12)
    assert torch.allclose(o.marginal().matrix, torch.diag(as_complex(expected)), atol=1e-12)


def test_from_discrete_query_histogram():
    f = np.random.default_rng(0).integers(0, 5, size=64)
    o = from_discrete_query(f.tolist(), 5)
    assert np.allclose(o.probabilities(), np.bincount(f, minlength=5) / 64)
    assert torch.allclose(o.marginal().matrix.diagonal().real, torch.as_tensor(np.bincount(f, minlength=5) / 64), atol=1e-12)


def test_from_discrete_query_invalid():
    with pytest.raises(ValueError) as e:
        from_discrete_query([])
    assert "must be non-empty" in str(e.value)
    with pytest.raises(ValueError) as e:
        from_discrete_query([0, 3], 3)
    assert "must lie in [0, 3)" in str(e.value)


def test_from_pure_state_oracle():
    v = np.random.default_rng(2).random(8)
    v /= np.linalg.norm(v)
    o = from_pure_state_oracle(v)
    assert is_unitary(o.unitary)
    assert torch.allclose(o.unitary @ basis_vector(o.dim), o.purification.amplitudes, atol=1e-12)
    assert torch.allclose(o.marginal().matrix, torch.diag(as_complex(v**2)), atol=1e-12)


def test_from_pure_state_oracle_invalid():
    with pytest.raises(ValueError) as e:
        from_pure_state_oracle([1.0, 1.0])
    assert "must be normalized" in str(e.value)


def test_apply_charges():
    o = purify_classical(ClassicalDistribution([0.5, 0.5]))
    s = o.prepare()
    o.apply_inverse(s.amplitudes)
    assert (o.counter.forward, o.counter.inverse) == (1, 1)
    # ground-truth access is free
    _ = o.purification
    _ = o.unitary
    assert o.counter.total == 2


def test_randomize_completion(rho_pair):
    o = purify_density(rho_pair[0])
    r = o.randomize_completion(np.random.default_rng(0))
    assert is_unitary(r.unitary)
    assert torch.allclose(r.unitary[:, 0], o.unitary[:, 0], atol=1e-12)
    assert not torch.allclose(r.unitary[:, 1:], o.unitary[:, 1:], atol=1e-6)
    assert r.cost == o.cost


def test_rotate_ancilla(rho_pair):
    o = purify_density(rho_pair[1])
    r = o.rotate_ancilla(haar_unitary(o.d_a, np.random.default_rng(1)))
    assert torch.allclose(partial_trace(r.purification, 0).matrix, rho_pair[1].matrix, atol=1e-10)
    assert is_unitary(r.unitary)
    with pytest.raises(ValueError) as e:
        o.rotate_ancilla(torch.eye(2, dtype=DTYPE))
    assert "ancilla rotation must be" in str(e.value)


param_ancilla_style = [(3, 0), (4, 1), (4, 2)]


@pytest.mark.parametrize("n, seed", param_ancilla_style)
def test_purify_classical_trivial(n: int, seed: int):
    p = generate("dirichlet-random", n=n, seed=seed)
    copy = purify_classical(p)
    o = purify_classical(p, ancilla_style="trivial", seed=seed)
    assert o.ancilla_style == "trivial"
    assert is_unitary(o.unitary)
    assert torch.allclose(o.unitary[:, 0], o.purification.amplitudes, atol=1e-12)
    assert torch.allclose(o.marginal().matrix, copy.marginal().matrix, atol=1e-12)
    # the ancilla basis is no longer the computational one
    assert not torch.allclose(o.purification.amplitudes, copy.purification.amplitudes, atol=1e-6)
    again = purify_classical(p, ancilla_style="trivial", seed=seed)
    assert torch.equal(again.purification.amplitudes, o.purification.amplitudes)


def test_PurifiedOracle_invalid():
    with pytest.raises(ValueError) as e:
        purify_classical(ClassicalDistribution([0.5, 0.5]), ancilla_style="random")
    assert "must be 'copy' or 'trivial'" in str(e.value)
