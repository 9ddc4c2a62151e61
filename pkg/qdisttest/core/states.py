from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import torch
from torch import Tensor

from .linalg import DTYPE, as_complex, dagger

PROB_ATOL = 1e-12
EIG_CLAMP = 1e-12


class ClassicalDistribution:
    """Probability vector p over [n]."""

    def __init__(self, probs: Sequence[float] | np.ndarray):
        """
        Args:
            probs (Sequence[float] | numpy.ndarray): non-negative entries summing to 1.
        """
        p = np.asarray(probs, dtype=np.float64).flatten()
        if p.size < 1:
            raise ValueError("distribution must have at least one entry.")
        if np.any(p < 0.0):
            raise ValueError(f"probabilities must be non-negative, got min={p.min()}.")
        if abs(p.sum() - 1.0) > PROB_ATOL:
            raise ValueError(f"probabilities must sum to 1, got sum={p.sum()}.")
        p.setflags(write=False)
        self._probs = p

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def n(self) -> int:
        return self._probs.size

    def as_density(self) -> DensityOperator:
        return DensityOperator(torch.diag(as_complex(self._probs)))

    def padded(self, n: int) -> ClassicalDistribution:
        """Same distribution embedded in [n] with zero tail."""
        if n < self.n:
            raise ValueError(f"cannot pad a distribution on {self.n} points to n={n}.")
        return ClassicalDistribution(np.concatenate([self._probs, np.zeros(n - self.n)]))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n})"


class DensityOperator:
    """n×n positive semi-definite, unit-trace complex matrix with a cached
    eigendecomposition."""

    def __init__(self, matrix: Tensor | np.ndarray):
        """
        Args:
            matrix (torch.Tensor | numpy.ndarray): square Hermitian matrix with unit trace.
        """
        m = as_complex(matrix)
        if m.dim() != 2 or m.size(0) != m.size(1):
            raise ValueError(f"density matrix must be square, got shape {tuple(m.shape)}.")
        if not torch.allclose(m, dagger(m), atol=PROB_ATOL, rtol=0.0):
            raise ValueError("density matrix must be Hermitian.")
        tr = torch.trace(m).real.item()
        if abs(tr - 1.0) > PROB_ATOL:
            raise ValueError(f"density matrix must have unit trace, got {tr}.")
        self._matrix = (m + dagger(m)) / 2
        self._eigen: tuple[Tensor, Tensor] | None = None
        vals, _ = self.eigen
        if vals[-1] < 0.0:
            raise ValueError(f"density matrix must be positive semi-definite, got eigenvalue {vals[-1].item()}.")

    @property
    def matrix(self) -> Tensor:
        return self._matrix

    @property
    def n(self) -> int:
        return self._matrix.size(0)

    @property
    def eigen(self) -> tuple[Tensor, Tensor]:
        """Eigenvalues in descending order (float64) and eigenvectors as
        columns."""
        if self._eigen is None:
            vals, vecs = torch.linalg.eigh(self._matrix)
            vals = torch.flip(vals, dims=[0])
            vecs = torch.flip(vecs, dims=[1])
            # clamp round-off, keep genuinely negative values for validation
            vals = torch.where((vals < 0.0) & (vals >= -EIG_CLAMP), torch.zeros_like(vals), vals)
            self._eigen = (vals, vecs)
        return self._eigen

    @property
    def spectrum(self) -> np.ndarray:
        return self.eigen[0].numpy()

    def is_diagonal(self, atol: float = 1e-14) -> bool:
        off = self._matrix - torch.diag(torch.diagonal(self._matrix))
        return bool(off.abs().max() <= atol)

    def diagonal(self) -> ClassicalDistribution:
        d = torch.diagonal(self._matrix).real.numpy()
        return ClassicalDistribution(np.clip(d, 0.0, None) / np.clip(d, 0.0, None).sum())

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n})"


class PureState:
    """Normalized amplitude vector over a tensor product of registers.

    Registers are ordered major-first: the flat index of (i_0, ..., i_k) is
    the row-major index over `register_dims`.
    """

    def __init__(self, amplitudes: Tensor | np.ndarray, register_dims: Sequence[int], flag_registers: Sequence[int] = ()):
        """
        Args:
            amplitudes (torch.Tensor | numpy.ndarray): flat amplitude vector.
            register_dims (Sequence[int]): subsystem dimensions.
            flag_registers (Sequence[int], optional): indices of flag qubits appended by applied maps. Defaults to `()`.
        """  # noqa: E501
        amp = as_complex(amplitudes).flatten()
        dims = tuple(int(d) for d in register_dims)
        if int(np.prod(dims)) != amp.numel():
            raise ValueError(f"register_dims={dims} do not match vector length {amp.numel()}.")
        norm = torch.linalg.vector_norm(amp).item()
        if abs(norm - 1.0) > PROB_ATOL:
            raise ValueError(f"state must be normalized, got norm {norm}.")
        for f in flag_registers:
            if not 0 <= f < len(dims) or dims[f] != 2:
                raise ValueError(f"flag register {f} must be a qubit register.")
        self._amplitudes = amp
        self._dims = dims
        self._flags = tuple(flag_registers)

    @property
    def amplitudes(self) -> Tensor:
        return self._amplitudes

    @property
    def register_dims(self) -> tuple[int, ...]:
        return self._dims

    @property
    def flag_registers(self) -> tuple[int, ...]:
        return self._flags

    @property
    def dim(self) -> int:
        return self._amplitudes.numel()

    def tensor(self) -> Tensor:
        """Amplitudes reshaped to one axis per register."""
        return self._amplitudes.reshape(self._dims)

    def apply_local(self, op: Tensor, register: int) -> Tensor:
        """Unnormalized amplitudes of (I ⊗ op ⊗ I)|s⟩ with `op` acting on
        `register`."""
        if not 0 <= register < len(self._dims):
            raise ValueError(f"register={register} is invalid for register_dims={self._dims}.")
        op = as_complex(op)
        if op.size(1) != self._dims[register]:
            raise ValueError(f"operator of shape {tuple(op.shape)} cannot act on register of dim {self._dims[register]}.")
        psi = torch.tensordot(op, self.tensor(), dims=([1], [register]))
        return torch.movedim(psi, 0, register)

    def overlap(self, other: PureState) -> complex:
        if self.dim != other.dim:
            raise ValueError(f"state dimensions {self.dim} and {other.dim} differ.")
        return complex(torch.vdot(self._amplitudes, other._amplitudes).item())

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(register_dims={self._dims}, flag_registers={self._flags})"


def zero_state(register_dims: Sequence[int]) -> PureState:
    dim = int(np.prod(register_dims))
    v = torch.zeros(dim, dtype=DTYPE)
    v[0] = 1.0
    return PureState(v, register_dims)
