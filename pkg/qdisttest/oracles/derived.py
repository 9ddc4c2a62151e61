from __future__ import annotations

import math

import numpy as np
import torch
from torch import Tensor

from qdisttest.core.functional import partial_trace, product_distribution
from qdisttest.core.linalg import DTYPE, dagger, hadamard, kron, register_permutation
from qdisttest.core.states import ClassicalDistribution, DensityOperator, PureState

from .oracle import PurifiedOracle


def _pad_ancilla(psi: Tensor, d_a: int, d_new: int, n: int) -> Tensor:
    out = torch.zeros(d_new * n, dtype=DTYPE)
    out[: d_a * n] = psi
    return out


def _pad_unitary(u: Tensor, d_a: int, d_new: int, n: int) -> Tensor:
    # A is the major register, so a < d_a occupies the leading block
    extra = (d_new - d_a) * n
    if extra == 0:
        return u
    return torch.block_diag(u, torch.eye(extra, dtype=DTYPE))


def mixture_oracle(o1: PurifiedOracle, o2: PurifiedOracle) -> PurifiedOracle:
    """Purified oracle for (ρ+σ)/2 with a fair coin qubit prepended to the A
    register.

    U = (|0⟩⟨0| ⊗ U_1 + |1⟩⟨1| ⊗ U_2)(H ⊗ I), with both A registers padded to
    the larger of the two. One use charges one query to each underlying
    oracle.
    """
    if o1.n != o2.n:
        raise ValueError(f"dimension mismatch: {o1.n} != {o2.n}.")
    n = o1.n
    d = max(o1.d_a, o2.d_a)
    psi1 = _pad_ancilla(o1.purification.amplitudes, o1.d_a, d, n)
    psi2 = _pad_ancilla(o2.purification.amplitudes, o2.d_a, d, n)
    psi = torch.cat([psi1, psi2]) / math.sqrt(2.0)

    if o1.is_classical and o2.is_classical:
        source: ClassicalDistribution | DensityOperator = ClassicalDistribution(
            (o1.source.probs + o2.source.probs) / 2  # type: ignore
        )
    else:
        source = DensityOperator((_as_density(o1.source).matrix + _as_density(o2.source).matrix) / 2)

    def build() -> Tensor:
        u1 = _pad_unitary(o1.unitary, o1.d_a, d, n)
        u2 = _pad_unitary(o2.unitary, o2.d_a, d, n)
        select = torch.block_diag(u1, u2)
        return select @ kron(hadamard(), torch.eye(d * n, dtype=DTYPE))

    return PurifiedOracle(psi, (2 * d, n), source, unitary_fn=build, cost=o1.cost + o2.cost)


def _as_density(x: ClassicalDistribution | DensityOperator) -> DensityOperator:
    return x.as_density() if isinstance(x, ClassicalDistribution) else x


def product_oracle(o: PurifiedOracle, n: int, m: int) -> PurifiedOracle:
    """Purified oracle for p_A × p_B from two uses of U_p on [n]×[m].

    Two copies of |ψ_p⟩ live on A1 I1 J1 A2 K2 L2 with B = I ⊗ J. The
    registers are reordered to (A1 J1 A2 K2 | I1 L2) so the new system register
    holds the first coordinate of copy one and the second of copy two.
    """
    if o.n != n * m:
        raise ValueError(f"system register of dim {o.n} cannot be factored as {n}x{m}.")
    d_a = o.d_a
    dims = [d_a, n, m, d_a, n, m]
    order = [0, 2, 3, 4, 1, 5]
    psi = o.purification.amplitudes
    psi2 = _permute_vector(kron(psi, psi), dims, order)
    d_new = d_a * m * d_a * n

    if o.is_classical:
        table = o.source.probs.reshape(n, m)  # type: ignore
        source: ClassicalDistribution | DensityOperator = product_distribution(
            ClassicalDistribution(table.sum(axis=1)), ClassicalDistribution(table.sum(axis=0))
        )
    else:
        state = PureState(psi, (d_a, n, m))
        rho_i = partial_trace(PureState(_trace_to(state, keep=1), (d_a * m, n)), 0)
        rho_l = partial_trace(PureState(_trace_to(state, keep=2), (d_a * n, m)), 0)
        source = DensityOperator(kron(rho_i.matrix, rho_l.matrix))

    def build() -> Tensor:
        u = o.unitary
        perm = register_permutation(dims, order)
        return perm @ kron(u, u) @ dagger(perm)

    return PurifiedOracle(psi2, (d_new, n * m), source, unitary_fn=build, cost=o.cost * 2)


def _permute_vector(v: Tensor, dims: list[int], order: list[int]) -> Tensor:
    return v.reshape(dims).permute(order).flatten()


def _trace_to(state: PureState, keep: int) -> Tensor:
    """Amplitudes regrouped as (everything else | register `keep`)."""
    order = [i for i in range(len(state.register_dims)) if i != keep] + [keep]
    return state.tensor().permute(order).flatten()


def correlation_gap(p: ClassicalDistribution, n: int, m: int) -> float:
    """‖p - p_A × p_B‖₁."""
    table = p.probs.reshape(n, m)
    prod = np.outer(table.sum(axis=1), table.sum(axis=0))
    return float(np.abs(table - prod).sum())
