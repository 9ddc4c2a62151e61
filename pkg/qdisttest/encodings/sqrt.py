from __future__ import annotations

import torch

from qdisttest.core.linalg import DTYPE, check_dim, dagger, householder_completion, kron, maximally_entangled
from qdisttest.oracles.oracle import PurifiedOracle

from .base import ProjectedUnitaryEncoding, RegisterLayout


def classical_sqrt_encoding(o: PurifiedOracle) -> ProjectedUnitaryEncoding:
    """Projected encoding of Σ √p_i |φ_i⟩⟨0| ⊗ |i⟩⟨0| ⊗ |i⟩⟨i| on
    registers (A, B, C).

    U = U_p ⊗ I_C, Π = Σ_i I ⊗ |i⟩⟨i| ⊗ |i⟩⟨i|, Π̃ = |0⟩⟨0| ⊗ |0⟩⟨0| ⊗ I.
    The singular values are {√p_i}; the right singular vectors live on C.
    """
    if not o.is_classical:
        raise ValueError("classical_sqrt_encoding requires an oracle for a classical distribution.")
    d_a, n = o.dims
    check_dim(d_a * n * n)
    u = kron(o.unitary, torch.eye(n, dtype=DTYPE))
    in_layout = RegisterLayout((d_a, n, n), (True, True, False))
    # B and C agree
    b = torch.arange(n).repeat_interleave(n).repeat(d_a)
    c = torch.arange(n).repeat(d_a * n)
    out_mask = b == c
    return ProjectedUnitaryEncoding(u, out_mask, in_layout.mask(), o.cost, in_layout=in_layout, check=False)


def density_sqrt_encoding(o: PurifiedOracle) -> ProjectedUnitaryEncoding:
    """Projected encoding with singular values {√(p_i/n)} on registers
    (X, A, B).

    W prepares Σ_j |j⟩_X|j⟩_A/√n; U′ = (I_X ⊗ U_ρ†)(W ⊗ I_B),
    Π′ = I_X ⊗ |0⟩⟨0|_A ⊗ |0⟩⟨0|_B and Π̃ = |0⟩⟨0|_X ⊗ |0⟩⟨0|_A ⊗ I_B. W is a
    Householder reflection and hence self-inverse, so W and W† coincide.
    """
    d_a, n = o.dims
    if d_a != n:
        raise ValueError(f"density_sqrt_encoding requires d_A = n, got d_A={d_a}, n={n}.")
    check_dim(n * n * n)
    w = householder_completion(maximally_entangled(n))
    eye = torch.eye(n, dtype=DTYPE)
    u = kron(eye, dagger(o.unitary)) @ kron(w, eye)
    in_layout = RegisterLayout((n, n, n), (True, True, False))
    out_layout = RegisterLayout((n, n, n), (False, True, True))
    return ProjectedUnitaryEncoding(
        u, out_layout.mask(), in_layout.mask(), o.cost, in_layout=in_layout, out_layout=out_layout, check=False
    )
