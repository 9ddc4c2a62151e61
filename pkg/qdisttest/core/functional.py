from __future__ import annotations

import math

import numpy as np
import torch

from .linalg import as_complex
from .states import ClassicalDistribution, DensityOperator, PureState

# eigenvalues below this contribute 0 to the von Neumann entropy
ENTROPY_CLAMP = 1e-14


def _entropy_of(values: np.ndarray, clamp: float = 0.0) -> float:
    v = np.asarray(values, dtype=np.float64)
    v = v[v > clamp]
    return float(-(v * np.log(v)).sum())


def shannon_entropy(d: ClassicalDistribution) -> float:
    """-Σ p_i ln p_i in nats with 0·ln 0 = 0."""
    return _entropy_of(d.probs)


def von_neumann_entropy(rho: DensityOperator) -> float:
    """-Tr[ρ ln ρ] in nats from the cached spectrum."""
    if rho.is_diagonal(atol=0.0):
        # exact diagonal inputs share the classical code path
        return _entropy_of(torch.diagonal(rho.matrix).real.numpy(), ENTROPY_CLAMP)
    return _entropy_of(rho.spectrum, ENTROPY_CLAMP)


def _as_matrix(x: ClassicalDistribution | DensityOperator) -> torch.Tensor:
    if isinstance(x, ClassicalDistribution):
        return torch.diag(as_complex(x.probs))
    return x.matrix


def schatten_distance(
    a: ClassicalDistribution | DensityOperator,
    b: ClassicalDistribution | DensityOperator,
    alpha: float = 2.0,
) -> float:
    """Schatten α-norm of a - b; the vector ℓ^α norm for classical
    inputs."""
    if alpha < 1.0:
        raise ValueError(f"alpha={alpha} must be >= 1.")
    if isinstance(a, ClassicalDistribution) and isinstance(b, ClassicalDistribution):
        if a.n != b.n:
            raise ValueError(f"dimension mismatch: {a.n} != {b.n}.")
        s = np.abs(a.probs - b.probs)
    else:
        ma, mb = _as_matrix(a), _as_matrix(b)
        if ma.shape != mb.shape:
            raise ValueError(f"dimension mismatch: {ma.size(0)} != {mb.size(0)}.")
        s = torch.linalg.svdvals(ma - mb).numpy()
    if math.isinf(alpha):
        return float(s.max())
    return float((s**alpha).sum() ** (1.0 / alpha))


def partial_trace(s: PureState, traced_register: int) -> DensityOperator:
    """Tr_X(|s⟩⟨s|) over register `traced_register`; the remaining
    registers keep their order."""
    if not 0 <= traced_register < len(s.register_dims):
        raise ValueError(f"traced_register={traced_register} is invalid for register_dims={s.register_dims}.")
    x = torch.movedim(s.tensor(), traced_register, 0).reshape(s.register_dims[traced_register], -1)
    return DensityOperator(x.transpose(0, 1) @ x.conj())


def trace_product(*ops: DensityOperator | torch.Tensor) -> complex:
    """Tr[A_1 A_2 ... A_k]."""
    mats = [o.matrix if isinstance(o, DensityOperator) else as_complex(o) for o in ops]
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return complex(torch.trace(out).item())


def marginals(d: ClassicalDistribution, n: int, m: int) -> tuple[ClassicalDistribution, ClassicalDistribution]:
    """Marginals p_A, p_B of a distribution over [n]×[m] (row-major)."""
    if d.n != n * m:
        raise ValueError(f"distribution on {d.n} points cannot be factored as {n}x{m}.")
    table = d.probs.reshape(n, m)
    return ClassicalDistribution(table.sum(axis=1)), ClassicalDistribution(table.sum(axis=0))


def product_distribution(pa: ClassicalDistribution, pb: ClassicalDistribution) -> ClassicalDistribution:
    return ClassicalDistribution(np.outer(pa.probs, pb.probs).flatten())
