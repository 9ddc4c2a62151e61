from __future__ import annotations

import numpy as np
import pytest
import torch

from qdisttest.core.generate import generate
from qdisttest.core.linalg import DTYPE, as_complex, dagger, haar_unitary, maximally_entangled
from qdisttest.core.states import PureState
from qdisttest.encodings.base import ProjectedUnitaryEncoding
from qdisttest.encodings.sqrt import classical_sqrt_encoding, density_sqrt_encoding
from qdisttest.oracles.counter import QueryCost
from qdisttest.oracles.oracle import purify_classical, purify_density
from qdisttest.poly.approx import ApproxPolynomial
from qdisttest.poly.build import build_P, build_Q
from qdisttest.svt.transform import apply_contraction, apply_svt, apply_to_state


@pytest.fixture(scope="module")
def density_encoding():
    return density_sqrt_encoding(purify_density(generate("haar-random-density", n=3, seed=11)))


@pytest.fixture(scope="module")
def classical_encoding():
    return classical_sqrt_encoding(purify_classical(generate("dirichlet-random", n=4, seed=3)))


def _brute_force_even(e, poly) -> torch.Tensor:
    # P applied to the eigenvalues of (A†A)^(1/2) on the image of Π̃
    v_in = e.in_isometry()
    a_c = e.encoded.matrix @ v_in
    vals, vecs = torch.linalg.eigh(dagger(a_c) @ a_c)
    s = torch.sqrt(torch.clamp(vals, min=0.0)).numpy()
    return (vecs * as_complex(poly(s)).unsqueeze(0)) @ dagger(vecs)


def test_apply_svt_linear(density_encoding):
    m = apply_svt(density_encoding, ApproxPolynomial.linear())
    assert torch.allclose(m.operator.matrix, density_encoding.encoded.matrix, atol=1e-12)
    assert m.parity == "odd"
    assert m.query_cost_per_use == 1
    assert m.controlled_reflections == 1


param_apply_svt_even = [
    (ApproxPolynomial.square()),
    (build_P(2.0, 0.1)),
    (build_P(4.0, 0.1)),
]


@pytest.mark.parametrize("poly", param_apply_svt_even)
def test_apply_svt_even(classical_encoding, density_encoding, poly: ApproxPolynomial):
    for e in (classical_encoding, density_encoding):
        m = apply_svt(e, poly)
        assert torch.allclose(m.compressed(), _brute_force_even(e, poly), atol=1e-10)
        assert m.query_cost_per_use == poly.degree


def test_apply_svt_odd(density_encoding):
    poly = build_Q(2.0, 0.5, 0.1)
    m = apply_svt(density_encoding, poly)
    a = density_encoding.encoded
    u, s, vh = a.svd()
    expected = (u * as_complex(poly(s.numpy())).unsqueeze(0)) @ vh
    assert torch.allclose(m.operator.matrix, expected, atol=1e-10)
    assert m.compressed().shape == (3, 3)


def test_apply_svt_invalid(density_encoding, classical_encoding):
    with pytest.raises(ValueError) as e:
        apply_svt(density_encoding, ApproxPolynomial([0.0, 0.5], "odd"))
    assert "requires a certified polynomial" in str(e.value)
    with pytest.raises(ValueError) as e:
        apply_svt(density_encoding, ApproxPolynomial.from_chebyshev([0.5, 0.5], None))
    assert "definite parity" in str(e.value)
    m = apply_svt(classical_encoding, ApproxPolynomial.linear())
    with pytest.raises(ValueError) as e:
        m.compressed()
    assert "product-form output layout" in str(e.value)


def test_apply_contraction():
    mc = torch.diag(torch.tensor([0.5, 1.0], dtype=DTYPE))
    s = PureState(as_complex([1.0, 1.0]) / np.sqrt(2.0), (2,))
    out = apply_contraction(mc, s, 0)
    assert out.register_dims == (2, 2)
    assert out.flag_registers == (1,)
    good = out.tensor()[:, 0]
    assert torch.allclose(good, as_complex([0.5, 1.0]) / np.sqrt(2.0), atol=1e-12)
    assert abs(float((good.abs() ** 2).sum()) - 0.625) < 1e-12


def test_apply_contraction_invalid():
    s = PureState(maximally_entangled(2), (2, 2))
    with pytest.raises(ValueError) as e:
        apply_contraction(torch.zeros((2, 3), dtype=DTYPE), s, 0)
    assert "does not act within one register" in str(e.value)
    with pytest.raises(ValueError) as e:
        apply_contraction(torch.eye(3, dtype=DTYPE), s, 1)
    assert "cannot act on register" in str(e.value)


def test_apply_to_state(density_encoding):
    # M = A†A = ρ/n acting on one half of a maximally entangled state
    m = apply_svt(density_encoding, ApproxPolynomial.square())
    out = apply_to_state(m, PureState(maximally_entangled(3), (3, 3)), 0)
    rho = generate("haar-random-density", n=3, seed=11).matrix
    good = out.tensor()[..., 0]
    expected = float(torch.trace(rho @ rho).real) / 9 / 3
    assert abs(float((good.abs() ** 2).sum()) - expected) < 1e-10


def _random_encoding(rng: np.random.Generator) -> ProjectedUnitaryEncoding:
    dim = int(rng.integers(2, 65))
    out_mask = torch.as_tensor(rng.random(dim) < rng.uniform(0.2, 0.8))
    in_mask = torch.as_tensor(rng.random(dim) < rng.uniform(0.2, 0.8))
    out_mask[int(rng.integers(dim))] = True
    in_mask[int(rng.integers(dim))] = True
    return ProjectedUnitaryEncoding(haar_unitary(dim, rng), out_mask, in_mask, QueryCost())


def _random_parity_polynomial(rng: np.random.Generator) -> ApproxPolynomial:
    parity = "odd" if rng.random() < 0.5 else "even"
    first = 1 if parity == "odd" else 0
    degree = first + 2 * int(rng.integers(0, 6))
    c = np.zeros(degree + 1)
    c[first::2] = rng.normal(size=c[first::2].size)
    return ApproxPolynomial.from_chebyshev(c, parity, rescale=True)


def _brute_force(e: ProjectedUnitaryEncoding, poly: ApproxPolynomial) -> np.ndarray:
    a = e.encoded.matrix.numpy()
    if poly.parity == "odd":
        u, s, vh = np.linalg.svd(a)
        return (u * poly(s)[np.newaxis, :]) @ vh
    v_in = e.in_isometry().numpy()
    a_c = a @ v_in
    vals, vecs = np.linalg.eigh(a_c.conj().T @ a_c)
    m = (vecs * poly(np.sqrt(np.clip(vals, 0.0, None)))[np.newaxis, :]) @ vecs.conj().T
    return v_in @ m @ v_in.conj().T


param_apply_svt_random = list(range(50))


@pytest.mark.parametrize("seed", param_apply_svt_random)
def test_apply_svt_random(seed: int):
    rng = np.random.default_rng(seed)
    e = _random_encoding(rng)
    poly = _random_parity_polynomial(rng)
    m = apply_svt(e, poly).operator.matrix
    assert np.abs(m.numpy() - _brute_force(e, poly)).max() <= 1e-9
    assert float(torch.linalg.matrix_norm(m, ord=2)) <= 1 + 1e-9
    # P(-A) = -P(A) for odd P and P(-A) = P(A) for even P
    sign = -1.0 if poly.parity == "odd" else 1.0
    negated = apply_svt(e.negated(), poly).operator.matrix
    assert torch.abs(negated - sign * m).max() <= 1e-10
