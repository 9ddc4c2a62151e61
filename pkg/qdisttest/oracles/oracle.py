from __future__ import annotations

import math
from collections.abc import Callable, Sequence

import numpy as np
import torch
from torch import Tensor

from qdisttest.core.functional import partial_trace
from qdisttest.core.linalg import (
    DTYPE,
    as_complex,
    basis_vector,
    dagger,
    haar_unitary,
    householder_completion,
    kron,
    modular_adder,
)
from qdisttest.core.states import EIG_CLAMP, ClassicalDistribution, DensityOperator, PureState

from .counter import QueryCost, QueryCounter


class PurifiedOracle:
    """Unitary U on registers A ⊗ B (A major) with U|0⟩|0⟩ = |ψ⟩ and
    Tr_A|ψ⟩⟨ψ| equal to the source distribution.

    The unitary is only materialized on first access; semantic-mode testers
    never touch it. Every `apply`/`prepare` call charges `cost`, which for
    oracles derived from others charges the underlying counters.
    """

    def __init__(
        self,
        purification: Tensor,
        dims: tuple[int, int],
        source: ClassicalDistribution | DensityOperator,
        unitary_fn: Callable[[], Tensor] | None = None,
        cost: QueryCost | None = None,
        counter: QueryCounter | None = None,
        ancilla_style: str = "copy",
    ):
        """
        Args:
            purification (torch.Tensor): the prepared state U|0⟩|0⟩ as a flat vector.
            dims (tuple[int, int]): dimensions (d_A, n) of the ancilla and system registers.
            source (ClassicalDistribution | DensityOperator): the distribution the oracle gives access to.
            unitary_fn (Callable[[], torch.Tensor] | None, optional): builds U on demand. Defaults to the Householder completion of `purification`.
            cost (QueryCost | None, optional): counters charged per use. Defaults to one call on `counter`.
            counter (QueryCounter | None, optional): counter of a base oracle. Defaults to a new counter.
            ancilla_style (str, optional): `"copy"` for the ancilla basis |i⟩ or `"trivial"` for an arbitrary orthonormal one. Defaults to `"copy"`.
        """  # noqa: E501
        d_a, n = dims
        psi = as_complex(purification).flatten()
        if psi.numel() != d_a * n:
            raise ValueError(f"purification of length {psi.numel()} does not match dims={dims}.")
        if source.n != n:
            raise ValueError(f"source on n={source.n} does not match system register of dim {n}.")
        if ancilla_style not in ("copy", "trivial"):
            raise ValueError(f"ancilla_style={ancilla_style} must be 'copy' or 'trivial'.")
        self._psi = psi
        self._dims = (int(d_a), int(n))
        self._source = source
        self._unitary_fn = unitary_fn if unitary_fn is not None else (lambda: householder_completion(psi))
        self._unitary: Tensor | None = None
        if cost is None:
            counter = counter if counter is not None else QueryCounter()
            cost = QueryCost.of(counter)
        self._counter = counter
        self._cost = cost
        self.ancilla_style = ancilla_style

    @property
    def dims(self) -> tuple[int, int]:
        return self._dims

    @property
    def d_a(self) -> int:
        return self._dims[0]

    @property
    def n(self) -> int:
        return self._dims[1]

    @property
    def dim(self) -> int:
        return self._dims[0] * self._dims[1]

    @property
    def source(self) -> ClassicalDistribution | DensityOperator:
        return self._source

    @property
    def is_classical(self) -> bool:
        return isinstance(self._source, ClassicalDistribution)

    @property
    def counter(self) -> QueryCounter | None:
        """Own counter of a base oracle; None for derived oracles."""
        return self._counter

    @property
    def cost(self) -> QueryCost:
        return self._cost

    @property
    def counters(self) -> list[QueryCounter]:
        return self._cost.counters

    @property
    def unitary(self) -> Tensor:
        """The full unitary (built lazily, never charged)."""
        if self._unitary is None:
            u = self._unitary_fn()
            assert u.shape == (self.dim, self.dim)
            self._unitary = u
        return self._unitary

    @property
    def purification(self) -> PureState:
        """U|0⟩|0⟩ for ground-truth inspection; never charged."""
        return PureState(self._psi, self._dims)

    def marginal(self) -> DensityOperator:
        return partial_trace(self.purification, 0)

    def probabilities(self) -> np.ndarray:
        """Diagonal of the source in the computational basis of B."""
        if self.is_classical:
            return self._source.probs  # type: ignore
        return torch.diagonal(self._source.matrix).real.numpy()  # type: ignore

    def apply(self, vec: Tensor) -> Tensor:
        self._cost.charge(forward=1)
        return self.unitary @ as_complex(vec)

    def apply_inverse(self, vec: Tensor) -> Tensor:
        self._cost.charge(forward=0, inverse=1)
        return dagger(self.unitary) @ as_complex(vec)

    def prepare(self) -> PureState:
        """Apply U to |0⟩|0⟩, charging one use."""
        return PureState(self.apply(basis_vector(self.dim)), self._dims)

    def _derive(self, purification: Tensor, unitary_fn: Callable[[], Tensor]) -> PurifiedOracle:
        out = PurifiedOracle(
            purification,
            self._dims,
            self._source,
            unitary_fn=unitary_fn,
            cost=self._cost,
            counter=self._counter,
            ancilla_style=self.ancilla_style,
        )
        return out

    def randomize_completion(self, rng: np.random.Generator) -> PurifiedOracle:
        """Same oracle with the columns beyond the first replaced by a random
        orthonormal completion: U (1 ⊕ V) for Haar-random V."""
        v = haar_unitary(self.dim - 1, rng) if self.dim > 1 else None

        def build() -> Tensor:
            if v is None:
                return self.unitary
            block = torch.block_diag(torch.ones((1, 1), dtype=DTYPE), v)
            return self.unitary @ block

        return self._derive(self._psi, build)

    def rotate_ancilla(self, r: Tensor) -> PurifiedOracle:
        """Same oracle with a unitary R applied on register A: (R ⊗ I) U."""
        r = as_complex(r)
        if r.shape != (self.d_a, self.d_a):
            raise ValueError(f"ancilla rotation must be {self.d_a}x{self.d_a}, got {tuple(r.shape)}.")
        op = kron(r, torch.eye(self.n, dtype=DTYPE))
        return self._derive(op @ self._psi, lambda: op @ self.unitary)

    def __repr__(self) -> str:
        kind = "classical" if self.is_classical else "density"
        return f"{self.__class__.__name__}(dims={self._dims}, source={kind}, cost={self._cost})"


def purify_classical(
    p: ClassicalDistribution, ancilla_style: str = "copy", counter: QueryCounter | None = None, seed: int = 0
) -> PurifiedOracle:
    """U_p|0⟩|0⟩ = Σ √p_i |φ_i⟩_A|i⟩_B.

    With `ancilla_style="copy"` the ancilla basis is |φ_i⟩ = |i⟩; `"trivial"`
    takes the columns of a Haar-random unitary drawn from `seed`.
    """
    n = p.n
    psi = torch.zeros(n * n, dtype=DTYPE)
    psi[torch.arange(n) * (n + 1)] = as_complex(np.sqrt(p.probs))
    o = PurifiedOracle(psi, (n, n), p, counter=counter, ancilla_style=ancilla_style)
    if ancilla_style == "trivial":
        return o.rotate_ancilla(haar_unitary(n, np.random.default_rng(seed)))
    return o


def purify_density(rho: DensityOperator, counter: QueryCounter | None = None) -> PurifiedOracle:
    """U_ρ|0⟩|0⟩ = Σ √p_i |i⟩_A|ψ_i⟩_B from the eigendecomposition of ρ."""
    vals, vecs = rho.eigen
    # round-off eigenvalues are zeroed
    vals = torch.where(vals <= EIG_CLAMP, torch.zeros_like(vals), vals)
    vals = vals / vals.sum()
    # row a of the (A, B) amplitude table is √p_a ψ_a
    table = torch.sqrt(vals).to(DTYPE).unsqueeze(1) * vecs.transpose(0, 1)
    return PurifiedOracle(table.flatten(), (rho.n, rho.n), rho, counter=counter)


def from_discrete_query(f: Sequence[int], n: int | None = None, counter: QueryCounter | None = None) -> PurifiedOracle:
    """Oracle preparing Σ_s |s⟩|f(s)⟩/√|S| from a table f: S → [n]
    (0-indexed), built as O_f (W_S ⊗ I)."""
    f = [int(v) for v in f]
    if len(f) == 0:
        raise ValueError("the query table must be non-empty.")
    n = max(f) + 1 if n is None else n
    if min(f) < 0 or max(f) >= n:
        raise ValueError(f"table values must lie in [0, {n}).")
    s = len(f)
    probs = np.bincount(np.asarray(f), minlength=n) / s
    psi = torch.zeros(s * n, dtype=DTYPE)
    psi[torch.arange(s) * n + torch.as_tensor(f)] = 1.0 / math.sqrt(s)

    def build() -> Tensor:
        w = householder_completion(torch.full((s,), 1.0 / math.sqrt(s), dtype=DTYPE))
        # O_f|s⟩|b⟩ = |s⟩|b + f(s) mod n⟩
        perm = [si * n + (b + f[si]) % n for si in range(s) for b in range(n)]
        o_f = torch.zeros((s * n, s * n), dtype=DTYPE)
        o_f[torch.as_tensor(perm), torch.arange(s * n)] = 1.0
        return o_f @ kron(w, torch.eye(n, dtype=DTYPE))

    return PurifiedOracle(psi, (s, n), ClassicalDistribution(probs), unitary_fn=build, counter=counter)


def from_pure_state_oracle(v: Sequence[float] | np.ndarray, counter: QueryCounter | None = None) -> PurifiedOracle:
    """Oracle for p_i = v_i² from a pure-state preparation V|0⟩ = Σ v_i|i⟩
    followed by a basis copy: U = ADD (V ⊗ I)."""
    v = np.asarray(v, dtype=np.float64).flatten()
    if np.any(v < 0.0):
        raise ValueError("amplitudes must be non-negative.")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"amplitude vector must be normalized, got norm {norm}.")
    n = v.size
    probs = v**2
    psi = torch.zeros(n * n, dtype=DTYPE)
    psi[torch.arange(n) * (n + 1)] = as_complex(v)

    def build() -> Tensor:
        prep = householder_completion(as_complex(v))
        return modular_adder(n, n) @ kron(prep, torch.eye(n, dtype=DTYPE))

    return PurifiedOracle(psi, (n, n), ClassicalDistribution(probs / probs.sum()), unitary_fn=build, counter=counter)
