from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import torch
from torch import Tensor

from qdisttest.core.linalg import DTYPE, Operator, as_complex, is_unitary
from qdisttest.oracles.counter import QueryCost


class RegisterLayout:
    """Product-form projector |0⟩⟨0| on the registers flagged in `zero`
    and identity on the others."""

    def __init__(self, dims: Sequence[int], zero: Sequence[bool]):
        """
        Args:
            dims (Sequence[int]): register dimensions, major first.
            zero (Sequence[bool]): whether each register is projected to |0⟩.
        """
        if len(dims) != len(zero):
            raise ValueError(f"dims={tuple(dims)} and zero={tuple(zero)} differ in length.")
        self.dims = tuple(int(d) for d in dims)
        self.zero = tuple(bool(z) for z in zero)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def free_dims(self) -> tuple[int, ...]:
        return tuple(d for d, z in zip(self.dims, self.zero) if not z)

    @property
    def free_dim(self) -> int:
        return int(np.prod(self.free_dims)) if self.free_dims else 1

    def indices(self) -> Tensor:
        """Flat indices of the basis states in the image, ordered
        lexicographically over the free registers."""
        grids = [np.zeros(1, dtype=np.int64) if z else np.arange(d) for d, z in zip(self.dims, self.zero)]
        mesh = np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, len(self.dims))
        return torch.as_tensor(np.ravel_multi_index(mesh.T, self.dims))

    def mask(self) -> Tensor:
        m = torch.zeros(self.dim, dtype=torch.bool)
        m[self.indices()] = True
        return m

    def isometry(self) -> Tensor:
        """dim × free_dim isometry onto the image."""
        v = torch.zeros((self.dim, self.free_dim), dtype=DTYPE)
        v[self.indices(), torch.arange(self.free_dim)] = 1.0
        return v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RegisterLayout):
            return NotImplemented
        return self.dims == other.dims and self.zero == other.zero

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dims={self.dims}, zero={self.zero})"


def _isometry_from_mask(mask: Tensor) -> Tensor:
    idx = torch.nonzero(mask).flatten()
    v = torch.zeros((mask.numel(), idx.numel()), dtype=DTYPE)
    v[idx, torch.arange(idx.numel())] = 1.0
    return v


class ProjectedUnitaryEncoding:
    """Triple (Π, U, Π̃) encoding A = Π U Π̃.

    Both projectors are diagonal in the computational basis and stored as
    boolean masks. `in_layout`/`out_layout` describe them when they have the
    product form of `RegisterLayout`; they are None otherwise.
    """

    def __init__(
        self,
        unitary: Tensor,
        out_mask: Tensor,
        in_mask: Tensor,
        cost: QueryCost,
        in_layout: RegisterLayout | None = None,
        out_layout: RegisterLayout | None = None,
        check: bool = True,
    ):
        """
        Args:
            unitary (torch.Tensor): the unitary U.
            out_mask (torch.Tensor): boolean diagonal of Π.
            in_mask (torch.Tensor): boolean diagonal of Π̃.
            cost (QueryCost): oracle calls consumed by one application of U.
            in_layout (RegisterLayout | None, optional): product-form description of Π̃. Defaults to `None`.
            out_layout (RegisterLayout | None, optional): product-form description of Π. Defaults to `None`.
            check (bool, optional): verify unitarity. Defaults to `True`.
        """  # noqa: E501
        self._unitary = as_complex(unitary)
        dim = self._unitary.size(0)
        if out_mask.numel() != dim or in_mask.numel() != dim:
            raise ValueError(f"projector dimensions do not match the unitary of dim {dim}.")
        if check and not is_unitary(self._unitary):
            raise ValueError("U must be unitary.")
        for layout, mask in ((in_layout, in_mask), (out_layout, out_mask)):
            if layout is not None and not torch.equal(layout.mask(), mask.to(torch.bool)):
                raise ValueError(f"layout {layout} does not describe the given projector.")
        self._out_mask = out_mask.to(torch.bool)
        self._in_mask = in_mask.to(torch.bool)
        self._cost = cost
        self.in_layout = in_layout
        self.out_layout = out_layout
        self._encoded: Operator | None = None

    @property
    def unitary(self) -> Tensor:
        return self._unitary

    @property
    def dim(self) -> int:
        return self._unitary.size(0)

    @property
    def out_projector(self) -> Tensor:
        return torch.diag(self._out_mask.to(DTYPE))

    @property
    def in_projector(self) -> Tensor:
        return torch.diag(self._in_mask.to(DTYPE))

    @property
    def out_mask(self) -> Tensor:
        return self._out_mask

    @property
    def in_mask(self) -> Tensor:
        return self._in_mask

    def in_isometry(self) -> Tensor:
        return self.in_layout.isometry() if self.in_layout is not None else _isometry_from_mask(self._in_mask)

    def out_isometry(self) -> Tensor:
        return self.out_layout.isometry() if self.out_layout is not None else _isometry_from_mask(self._out_mask)

    @property
    def encoded(self) -> Operator:
        """A = Π U Π̃ on the full space, with cached SVD."""
        if self._encoded is None:
            out = self._out_mask.to(DTYPE).unsqueeze(1)
            inp = self._in_mask.to(DTYPE).unsqueeze(0)
            self._encoded = Operator(out * self._unitary * inp)
        return self._encoded

    @property
    def cost(self) -> QueryCost:
        return self._cost

    @property
    def queries_per_use(self) -> int:
        return self._cost.total

    def negated(self) -> ProjectedUnitaryEncoding:
        """Encoding of -A from -U."""
        return ProjectedUnitaryEncoding(
            -self._unitary, self._out_mask, self._in_mask, self._cost, self.in_layout, self.out_layout, check=False
        )

    def extra_repr(self) -> str:
        return f"dim={self.dim}, queries_per_use={self.queries_per_use}"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.extra_repr()})"


class BlockEncoding(ProjectedUnitaryEncoding):
    """Π = Π̃ = |0⟩⟨0|_anc ⊗ I with the ancilla as the major register, so the
    encoded operator is the top-left block of U."""

    def __init__(self, unitary: Tensor, ancilla_dims: Sequence[int], cost: QueryCost, check: bool = True):
        """
        Args:
            unitary (torch.Tensor): the unitary U.
            ancilla_dims (Sequence[int]): dimensions of the ancilla registers, all projected to |0⟩.
            cost (QueryCost): oracle calls consumed by one application of U.
            check (bool, optional): verify unitarity. Defaults to `True`.
        """
        unitary = as_complex(unitary)
        anc = int(np.prod(ancilla_dims))
        if unitary.size(0) % anc != 0:
            raise ValueError(f"ancilla of dim {anc} does not divide unitary dim {unitary.size(0)}.")
        free = unitary.size(0) // anc
        layout = RegisterLayout(tuple(ancilla_dims) + (free,), (True,) * len(ancilla_dims) + (False,))
        mask = layout.mask()
        super().__init__(unitary, mask, mask, cost, layout, layout, check=check)
        self.ancilla_dims = tuple(int(d) for d in ancilla_dims)

    @classmethod
    def from_contraction(cls, b: Tensor, cost: QueryCost) -> BlockEncoding:
        """Unitary dilation [[B, √(I-B²)], [√(I-B²), -B]] of a Hermitian
        contraction B."""
        b = as_complex(b)
        vals, vecs = torch.linalg.eigh((b + b.conj().transpose(0, 1)) / 2)
        if vals.abs().max() > 1.0 + 1e-9:
            raise ValueError(f"operator norm {vals.abs().max().item()} exceeds 1.")
        vals = torch.clamp(vals, -1.0, 1.0)
        comp = (vecs * torch.sqrt(1.0 - vals**2).to(DTYPE).unsqueeze(0)) @ vecs.conj().transpose(0, 1)
        bh = (vecs * vals.to(DTYPE).unsqueeze(0)) @ vecs.conj().transpose(0, 1)
        u = torch.cat([torch.cat([bh, comp], dim=1), torch.cat([comp, -bh], dim=1)], dim=0)
        return cls(u, (2,), cost)

    @property
    def ancilla_dim(self) -> int:
        return int(np.prod(self.ancilla_dims))

    @property
    def ancilla_qubits(self) -> int:
        return int(math.ceil(math.log2(self.ancilla_dim))) if self.ancilla_dim > 1 else 0

    @property
    def block_dim(self) -> int:
        return self.dim // self.ancilla_dim

    @property
    def block(self) -> Tensor:
        return self._unitary[: self.block_dim, : self.block_dim]

    def negated(self) -> BlockEncoding:
        return BlockEncoding(-self._unitary, self.ancilla_dims, self._cost, check=False)

    def extra_repr(self) -> str:
        return f"dim={self.dim}, ancilla_dims={self.ancilla_dims}, queries_per_use={self.queries_per_use}"
