from __future__ import annotations

from typing import TYPE_CHECKING

import torch

from qdisttest.core.linalg import DTYPE, check_dim, dagger, hadamard, kron, swap_registers
from qdisttest.oracles.oracle import PurifiedOracle

from .base import BlockEncoding, ProjectedUnitaryEncoding

if TYPE_CHECKING:
    from qdisttest.poly.approx import ApproxPolynomial


def block_encode_density(o: PurifiedOracle) -> BlockEncoding:
    """Block-encoding of ρ on registers (A, B, B′) from two queries:
    U = (U_ρ† ⊗ I)(I_A ⊗ SWAP_{B,B′})(U_ρ ⊗ I)."""
    d_a, n = o.dims
    check_dim(d_a * n * n)
    eye_n = torch.eye(n, dtype=DTYPE)
    u_rho = kron(o.unitary, eye_n)
    swap = kron(torch.eye(d_a, dtype=DTYPE), swap_registers(n))
    u = dagger(u_rho) @ swap @ u_rho
    return BlockEncoding(u, (d_a, n), o.cost * 2, check=False)


def half_difference(b1: BlockEncoding, b2: BlockEncoding) -> BlockEncoding:
    """Block-encoding of (A_1 - A_2)/2 by a linear combination over one
    control qubit: (H ⊗ I)(Z ⊗ I)(|0⟩⟨0| ⊗ U_1 + |1⟩⟨1| ⊗ U_2)(H ⊗ I)."""
    if b1.dim != b2.dim or b1.ancilla_dims != b2.ancilla_dims:
        raise ValueError(f"dimension mismatch: {b1} vs {b2}.")
    h = kron(hadamard(), torch.eye(b1.dim, dtype=DTYPE))
    z = kron(torch.diag(torch.tensor([1.0, -1.0], dtype=DTYPE)), torch.eye(b1.dim, dtype=DTYPE))
    select = torch.block_diag(b1.unitary, b2.unitary)
    u = h @ z @ select @ h
    return BlockEncoding(u, (2,) + b1.ancilla_dims, b1.cost + b2.cost, check=False)


def gram_square(e: ProjectedUnitaryEncoding, poly: ApproxPolynomial | None = None) -> BlockEncoding:
    """Block-encoding of A†A restricted to the image of Π̃.

    A†A = Σ ς_i²|ψ_i⟩⟨ψ_i| is the even singular value transform of A by x²,
    which costs two uses of U; the resulting contraction is dilated into a
    one-qubit block-encoding. With `poly` given, P(A)†P(A) is encoded
    instead, as the even transform by P².
    """
    from qdisttest.poly.approx import ApproxPolynomial
    from qdisttest.svt.transform import apply_svt

    if e.in_layout is None:
        raise ValueError("gram_square requires an input projector of the form |0><0| ⊗ I.")
    m = apply_svt(e, ApproxPolynomial.square() if poly is None else poly.squared())
    v_in = e.in_isometry()
    compressed = dagger(v_in) @ m.operator.matrix @ v_in
    return BlockEncoding.from_contraction(compressed, m.cost)
