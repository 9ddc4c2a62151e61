from __future__ import annotations

import math

import numpy as np
import torch

from .linalg import as_complex, dagger
from .states import ClassicalDistribution, DensityOperator


class BaseGenerator:
    """Callable producing one test instance."""

    quantum = False

    def __init__(self, n: int):
        """
        Args:
            n (int): the support size or matrix dimension.
        """
        if n < 1:
            raise ValueError(f"n={n} must be positive.")
        self.n = n

    def extra_repr(self) -> str:
        return f"n={self.n}"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.extra_repr()})"

    def __call__(self) -> ClassicalDistribution | DensityOperator:
        raise NotImplementedError


class Uniform(BaseGenerator):
    def __init__(self, n: int):
        super().__init__(n)

    def __call__(self) -> ClassicalDistribution:
        return ClassicalDistribution(np.full(self.n, 1.0 / self.n))


class Deterministic(BaseGenerator):
    def __init__(self, n: int, index: int = 0):
        super().__init__(n)
        if not 0 <= index < n:
            raise ValueError(f"index={index} is out of range for n={n}.")
        self.index = index

    def __call__(self) -> ClassicalDistribution:
        p = np.zeros(self.n)
        p[self.index] = 1.0
        return ClassicalDistribution(p)


class Zipf(BaseGenerator):
    """p_i ∝ (i+1)^{-s}."""

    def __init__(self, n: int, s: float = 1.0):
        super().__init__(n)
        if s < 0.0:
            raise ValueError(f"exponent s={s} must be non-negative.")
        self.s = s

    def extra_repr(self) -> str:
        return f"n={self.n}, s={self.s}"

    def __call__(self) -> ClassicalDistribution:
        w = np.arange(1, self.n + 1, dtype=np.float64) ** (-self.s)
        return ClassicalDistribution(w / w.sum())


class DirichletRandom(BaseGenerator):
    def __init__(self, n: int, seed: int = 0, alpha: float = 1.0):
        super().__init__(n)
        if alpha <= 0.0:
            raise ValueError(f"alpha={alpha} must be positive.")
        self.seed = seed
        self.alpha = alpha

    def extra_repr(self) -> str:
        return f"n={self.n}, seed={self.seed}, alpha={self.alpha}"

    def __call__(self) -> ClassicalDistribution:
        p = np.random.default_rng(self.seed).dirichlet(np.full(self.n, self.alpha))
        return ClassicalDistribution(p / p.sum())


class TwoPoint(BaseGenerator):
    """(1/2 + δ, 1/2 - δ)."""

    def __init__(self, delta: float, n: int = 2):
        if n != 2:
            raise ValueError(f"two-point distributions live on n=2, got n={n}.")
        super().__init__(n)
        if not 0.0 <= delta <= 0.5:
            raise ValueError(f"delta={delta} must be in [0, 1/2].")
        self.delta = delta

    def extra_repr(self) -> str:
        return f"delta={self.delta}"

    def __call__(self) -> ClassicalDistribution:
        return ClassicalDistribution([0.5 + self.delta, 0.5 - self.delta])


class Perturbed(BaseGenerator):
    """Uniform distribution shifted by ±c on alternating entries, with c
    chosen so that the distance to uniform is `distance` in the given
    norm."""

    def __init__(self, n: int, distance: float, norm: str = "l2"):
        super().__init__(n)
        if n % 2 != 0:
            raise ValueError(f"n={n} must be even.")
        if norm == "l2":
            c = distance / math.sqrt(n)
        elif norm == "l1":
            c = distance / n
        else:
            raise ValueError(f"norm={norm} must be 'l1' or 'l2'.")
        if c > 1.0 / n or distance < 0.0:
            raise ValueError(f"distance={distance} is not reachable from uniform on n={n}.")
        self.distance = distance
        self.norm = norm
        self._c = c

    def extra_repr(self) -> str:
        return f"n={self.n}, distance={self.distance}, norm={self.norm}"

    def __call__(self) -> ClassicalDistribution:
        signs = np.where(np.arange(self.n) % 2 == 0, 1.0, -1.0)
        return ClassicalDistribution(1.0 / self.n + self._c * signs)


class Product(BaseGenerator):
    """Product of two random distributions on [n1]×[n2] (row-major)."""

    def __init__(self, n1: int, n2: int, seed: int | None = None, n: int | None = None):
        super().__init__(n1 * n2)
        if n is not None and n != n1 * n2:
            raise ValueError(f"n={n} must equal n1*n2={n1 * n2}.")
        self.n1, self.n2, self.seed = n1, n2, seed

    def extra_repr(self) -> str:
        return f"n1={self.n1}, n2={self.n2}, seed={self.seed}"

    def __call__(self) -> ClassicalDistribution:
        if self.seed is None:
            a, b = np.full(self.n1, 1.0 / self.n1), np.full(self.n2, 1.0 / self.n2)
        else:
            rng = np.random.default_rng(self.seed)
            a, b = rng.dirichlet(np.ones(self.n1)), rng.dirichlet(np.ones(self.n2))
        p = np.outer(a, b).flatten()
        return ClassicalDistribution(p / p.sum())


class Correlated(BaseGenerator):
    """Uniform on the diagonal {(i, i)} of [m]×[m]."""

    def __init__(self, m: int, n: int | None = None):
        super().__init__(m * m)
        if n is not None and n != m * m:
            raise ValueError(f"n={n} must equal m*m={m * m}.")
        self.m = m

    def extra_repr(self) -> str:
        return f"m={self.m}"

    def __call__(self) -> ClassicalDistribution:
        p = np.zeros(self.m * self.m)
        p[np.arange(self.m) * (self.m + 1)] = 1.0 / self.m
        return ClassicalDistribution(p)


class HaarRandomDensity(BaseGenerator):
    """Rank-r density operator Tr_E|ψ⟩⟨ψ| of a Haar-random pure state on
    n×r."""

    quantum = True

    def __init__(self, n: int, rank: int | None = None, seed: int = 0):
        super().__init__(n)
        rank = n if rank is None else rank
        if not 1 <= rank <= n:
            raise ValueError(f"rank={rank} must be in [1, {n}].")
        self.rank = rank
        self.seed = seed

    def extra_repr(self) -> str:
        return f"n={self.n}, rank={self.rank}, seed={self.seed}"

    def __call__(self) -> DensityOperator:
        rng = np.random.default_rng(self.seed)
        g = as_complex(rng.standard_normal((self.n, self.rank)) + 1j * rng.standard_normal((self.n, self.rank)))
        rho = g @ dagger(g)
        return DensityOperator(rho / torch.trace(rho).real)


class MaximallyMixed(BaseGenerator):
    quantum = True

    def __init__(self, n: int):
        super().__init__(n)

    def __call__(self) -> DensityOperator:
        return DensityOperator(torch.eye(self.n, dtype=torch.complex128) / self.n)


def generate(kind: str, **kwargs) -> ClassicalDistribution | DensityOperator:
    """Build an instance by generator name, e.g. `generate("zipf", n=8,
    s=1.5)`.

    Pass `as_density=True` to lift a classical instance to diag(p).
    """
    from qdisttest.utils.resolve import generator_resolver

    as_density = kwargs.pop("as_density", False)
    out = generator_resolver(kind, **kwargs)()
    if as_density and isinstance(out, ClassicalDistribution):
        return out.as_density()
    return out
