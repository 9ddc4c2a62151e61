from __future__ import annotations

import numpy as np
import pytest
import torch

from qdisttest.core.functional import schatten_distance, trace_product
from qdisttest.core.linalg import as_complex, dagger, haar_unitary
from qdisttest.core.states import DensityOperator
from qdisttest.oracles.oracle import purify_classical, purify_density
from qdisttest.testers.base import CLOSE, FAR
from qdisttest.testers.quantum import l2_quantum, l3_closeness, swap_test_probability


def test_swap_test_probability(random_states, plus_state):
    rho, sigma = random_states
    for a, b in ((rho, sigma), (rho, rho), (sigma, sigma)):
        semantic = swap_test_probability(purify_density(a), purify_density(b))
        matrix = swap_test_probability(purify_density(a), purify_density(b), "matrix")
        assert semantic == pytest.approx((1 + trace_product(a, b).real) / 2)
        assert matrix == pytest.approx(semantic, abs=1e-12)
    # a pure state passes the SWAP test against itself
    assert swap_test_probability(purify_density(plus_state), purify_density(plus_state), "matrix") == pytest.approx(1.0)


param_l2_quantum = [
    ("maximally_entangled", FAR),
    ("swap", FAR),
    ("auto", FAR),
]


@pytest.mark.parametrize("route, expected", param_l2_quantum)
def test_l2_quantum_far(orthogonal_states, route: str, expected: str):
    o_rho, o_sigma = purify_density(orthogonal_states[0]), purify_density(orthogonal_states[1])
    verdict = l2_quantum(o_rho, o_sigma, 0.5, 0.5, seed=0, mode="exact", route=route)
    assert verdict.decision == expected
    assert verdict.estimate == pytest.approx(2.0)
    assert verdict.queries == o_rho.counter.total + o_sigma.counter.total


@pytest.mark.parametrize("route", ["maximally_entangled", "swap"])
def test_l2_quantum_close(random_states, route: str):
    rho = random_states[0]
    verdict = l2_quantum(purify_density(rho), purify_density(rho), 0.5, seed=0, mode="exact", route=route)
    assert verdict.decision == CLOSE
    assert verdict.estimate == pytest.approx(0.0, abs=1e-12)


def test_l2_quantum_route(random_states):
    rho, sigma = random_states
    verdict = l2_quantum(purify_density(rho), purify_density(sigma), 0.5, mode="exact")
    # √3 <= 1/0.5
    assert verdict.params["route"] == "maximally_entangled"
    assert [s.name for s in verdict.trace] == ["maximally_entangled"]
    verdict = l2_quantum(purify_density(rho), purify_density(sigma), 0.5, mode="exact", route="swap")
    assert [s.name for s in verdict.trace] == ["swap_rho_rho", "swap_rho_sigma", "swap_sigma_sigma"]
    assert verdict.estimate == pytest.approx(schatten_distance(rho, sigma, 2.0) ** 2, abs=1e-12)


def test_l2_quantum_matrix(random_states):
    rho, sigma = random_states
    dist_sq = schatten_distance(rho, sigma, 2.0) ** 2
    for route in ("maximally_entangled", "swap"):
        verdict = l2_quantum(purify_density(rho), purify_density(sigma), 0.5, mode="matrix", route=route)
        assert verdict.exact == pytest.approx(dist_sq, abs=1e-10)
        assert verdict.params["distance_sq"] == pytest.approx(dist_sq)


def test_l2_quantum_classical(far_pair):
    p, q = far_pair
    verdict = l2_quantum(purify_classical(p), purify_classical(q), 0.5, mode="exact")
    assert verdict.exact == pytest.approx(schatten_distance(p, q, 2.0) ** 2)
    assert verdict.decision == FAR


def test_l2_quantum_invalid(random_states):
    o = purify_density(random_states[0])
    with pytest.raises(ValueError) as e:
        l2_quantum(o, o, 1.5)
    assert "must lie in (0, 1)" in str(e.value)
    with pytest.raises(ValueError) as e:
        l2_quantum(o, o, 0.5, route="direct")
    assert "route=direct must be one of" in str(e.value)




def test_l3_closeness_far(orthogonal_states):
    o_rho, o_sigma = purify_density(orthogonal_states[0]), purify_density(orthogonal_states[1])
    verdict = l3_closeness(o_rho, o_sigma, 0.5, mode="exact")
    # Tr[(ρ - σ)²(ρ + σ)]/8 = 2/8
    assert verdict.exact == pytest.approx(0.25)
    assert verdict.decision == FAR
    assert verdict.params["distance_l3"] == pytest.approx(2 ** (1 / 3))
    assert verdict.queries == o_rho.counter.total + o_sigma.counter.total


def test_l3_closeness_close(random_states):
    rho = random_states[1]
    verdict = l3_closeness(purify_density(rho), purify_density(rho), 0.5, seed=3)
    assert verdict.decision == CLOSE
    assert verdict.estimate == 0.0


def test_l3_closeness_matrix(random_states):
    rho, sigma = random_states
    for a, b in ((rho, sigma), (sigma, rho)):
        matrix = l3_closeness(purify_density(a), purify_density(b), 0.5, mode="matrix")
        exact = l3_closeness(purify_density(a), purify_density(b), 0.5, mode="exact")
        assert matrix.exact == pytest.approx(exact.exact, abs=1e-12)
    d = rho.matrix - sigma.matrix
    assert exact.exact == pytest.approx(trace_product(d, d, rho.matrix + sigma.matrix).real / 8)


def test_l3_closeness_queries(random_states):
    rho, sigma = random_states
    o_rho, o_sigma = purify_density(rho), purify_density(sigma)
    verdict = l3_closeness(o_rho, o_sigma, 0.5, mode="exact")
    M = verdict.params["M"]
    # one use of the mixture and two of each density block-encoding per iterate
    assert o_rho.counter.total == o_sigma.counter.total == 2 * M * 3
    assert verdict.queries == 12 * M


def _rotated_diagonal(probs: np.ndarray, u: torch.Tensor) -> DensityOperator:
    return DensityOperator(u @ torch.diag(as_complex(probs)) @ dagger(u))


@pytest.mark.slow
@pytest.mark.parametrize("route", ["maximally_entangled", "swap"])
def test_l2_quantum_success_rate(route: str):
    eps, nu = 0.2, 0.5
    p = np.array([0.3, 0.3] + [0.4 / 6] * 6)
    shift = np.zeros(8)
    shift[:2] = [eps / np.sqrt(2.0), -eps / np.sqrt(2.0)]
    u = haar_unitary(8, np.random.default_rng(31))
    rho, sigma = _rotated_diagonal(p, u), _rotated_diagonal(p + shift, u)
    assert schatten_distance(rho, sigma, 2.0) == pytest.approx(eps)
    close_hits = far_hits = 0
    for seed in range(50):
        close = l2_quantum(purify_density(rho), purify_density(rho), eps, nu, seed, route=route)
        far = l2_quantum(purify_density(rho), purify_density(sigma), eps, nu, seed, route=route)
        close_hits += close.decision == CLOSE
        far_hits += far.decision == FAR
    assert close_hits >= 34
    assert far_hits >= 34
