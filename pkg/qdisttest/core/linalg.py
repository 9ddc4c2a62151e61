from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import torch
from torch import Tensor

DTYPE = torch.complex128
# Largest dimension of any matrix built in matrix mode.
MAX_MATRIX_DIM = 1024


def as_complex(x: Tensor | np.ndarray | Sequence) -> Tensor:
    """Cast anything array-like to a complex128 tensor."""
    if isinstance(x, Tensor):
        return x.to(DTYPE).resolve_conj().contiguous()
    return torch.as_tensor(np.asarray(x), dtype=DTYPE)


def basis_vector(dim: int, index: int = 0) -> Tensor:
    v = torch.zeros(dim, dtype=DTYPE)
    v[index] = 1.0
    return v


def dagger(m: Tensor) -> Tensor:
    return m.mH.resolve_conj().contiguous()


def is_unitary(u: Tensor, atol: float = 1e-10) -> bool:
    eye = torch.eye(u.size(0), dtype=DTYPE)
    return bool(torch.allclose(dagger(u) @ u, eye, atol=atol, rtol=0.0))


def is_hermitian(m: Tensor, atol: float = 1e-12) -> bool:
    return bool(torch.allclose(m, dagger(m), atol=atol, rtol=0.0))


def kron(*ms: Tensor) -> Tensor:
    out = as_complex(ms[0])
    for m in ms[1:]:
        out = torch.kron(out, as_complex(m))
    return out


def householder_completion(v: Tensor) -> Tensor:
    """Unitary whose first column is the unit vector `v`.

    With v_0 = |v_0| e^{iφ}, the reflection H = I - 2ww†/‖w‖² with
    w = e_0 - e^{-iφ} v sends e_0 to e^{-iφ} v, so U = e^{iφ} H is returned.
    """
    v = as_complex(v).flatten()
    dim = v.size(0)
    norm = torch.linalg.vector_norm(v).item()
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"vector norm {norm} must be 1.")
    phase = torch.angle(v[0]) if v[0].abs() > 0 else torch.tensor(0.0, dtype=torch.float64)
    u = torch.exp(-1j * phase).to(DTYPE) * v
    w = basis_vector(dim) - u
    wn = torch.linalg.vector_norm(w).item()
    eye = torch.eye(dim, dtype=DTYPE)
    if wn < 1e-14:
        return torch.exp(1j * phase).to(DTYPE) * eye
    h = eye - 2.0 * torch.outer(w, w.conj()) / wn**2
    return torch.exp(1j * phase).to(DTYPE) * h


def haar_unitary(dim: int, rng: np.random.Generator) -> Tensor:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = torch.linalg.qr(as_complex(g))
    d = torch.diagonal(r)
    return q * (d / d.abs()).unsqueeze(0)


def maximally_entangled(n: int) -> Tensor:
    """Σ_j |j⟩|j⟩/√n on two n-dimensional registers."""
    v = torch.zeros(n * n, dtype=DTYPE)
    v[torch.arange(n) * (n + 1)] = 1.0 / math.sqrt(n)
    return v


def hadamard() -> Tensor:
    return as_complex([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def permutation_matrix(perm: Sequence[int]) -> Tensor:
    """Matrix sending basis state |i⟩ to |perm[i]⟩."""
    dim = len(perm)
    p = torch.zeros((dim, dim), dtype=DTYPE)
    p[torch.as_tensor(perm), torch.arange(dim)] = 1.0
    return p


def register_permutation(dims: Sequence[int], order: Sequence[int]) -> Tensor:
    """Unitary reordering tensor-product registers.

    The returned matrix maps the register ordering `dims` to the ordering
    `[dims[i] for i in order]`.
    """
    total = int(np.prod(dims))
    idx = np.arange(total).reshape(tuple(dims))
    # position of old basis state in the new ordering
    new_idx = np.empty(total, dtype=np.int64)
    new_idx[idx.transpose(tuple(order)).flatten()] = np.arange(total)
    return permutation_matrix(new_idx.tolist())


def modular_adder(d_a: int, n: int) -> Tensor:
    """|a⟩|b⟩ ↦ |a⟩|(b + a) mod n⟩."""
    a = np.repeat(np.arange(d_a), n)
    b = np.tile(np.arange(n), d_a)
    return permutation_matrix((a * n + (b + a) % n).tolist())


def swap_registers(d: int) -> Tensor:
    """SWAP of two d-dimensional registers."""
    return register_permutation([d, d], [1, 0])


def embed(op: Tensor, dims: Sequence[int], register: int) -> Tensor:
    """I ⊗ op ⊗ I acting on `register` of the product space `dims`."""
    before = int(np.prod(dims[:register]))
    after = int(np.prod(dims[register + 1 :]))
    return kron(torch.eye(before, dtype=DTYPE), op, torch.eye(after, dtype=DTYPE))


def psd_sqrt(m: Tensor) -> Tensor:
    """Square root of a Hermitian positive semi-definite matrix."""
    vals, vecs = torch.linalg.eigh(m)
    vals = torch.clamp(vals, min=0.0)
    return (vecs * torch.sqrt(vals).to(DTYPE).unsqueeze(0)) @ dagger(vecs)


def check_dim(dim: int) -> None:
    if dim > MAX_MATRIX_DIM:
        raise ValueError(f"matrix dimension {dim} exceeds the matrix-mode cap {MAX_MATRIX_DIM}.")


class Operator:
    """Rectangular complex matrix with a cached singular value
    decomposition."""

    def __init__(self, matrix: Tensor | np.ndarray):
        """
        Args:
            matrix (torch.Tensor | numpy.ndarray): the matrix, cast to complex128.
        """
        self._matrix = as_complex(matrix)
        if self._matrix.dim() != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {tuple(self._matrix.shape)}.")
        self._svd: tuple[Tensor, Tensor, Tensor] | None = None

    @property
    def matrix(self) -> Tensor:
        return self._matrix

    @property
    def shape(self) -> tuple[int, int]:
        return tuple(self._matrix.shape)  # type: ignore

    def svd(self) -> tuple[Tensor, Tensor, Tensor]:
        """Returns (left vectors, singular values, right vectors†) with
        non-increasing singular values."""
        if self._svd is None:
            u, s, vh = torch.linalg.svd(self._matrix, full_matrices=False)
            self._svd = (u, s, vh)
        return self._svd

    @property
    def singular_values(self) -> Tensor:
        return self.svd()[1]

    def reconstruct(self) -> Tensor:
        u, s, vh = self.svd()
        return (u * s.to(DTYPE).unsqueeze(0)) @ vh

    def norm(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.numel() > 0 else 0.0

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(shape={self.shape})"
