"""Sampling baselines shown next to the query counts of the testers.

Both estimators are the textbook ones and make no attempt at optimal sample
complexity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qdisttest.core.functional import shannon_entropy
from qdisttest.core.states import ClassicalDistribution


@dataclass(frozen=True)
class SampleBudget:
    samples: int
    seed: int | None = 0

    def __post_init__(self):
        if int(self.samples) < 1:
            raise ValueError(f"samples={self.samples} must be positive.")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _probs(p: ClassicalDistribution | np.ndarray) -> np.ndarray:
    return p.probs if isinstance(p, ClassicalDistribution) else ClassicalDistribution(p).probs


def plugin_entropy(p: ClassicalDistribution | np.ndarray, budget: SampleBudget) -> float:
    """Shannon entropy, in nats, of the empirical histogram of
    `budget.samples` draws from p."""
    counts = budget.rng().multinomial(budget.samples, _probs(p))
    return shannon_entropy(ClassicalDistribution(counts / budget.samples))


def collision_l2(
    p: ClassicalDistribution | np.ndarray, q: ClassicalDistribution | np.ndarray, budget: SampleBudget
) -> float:
    """Unbiased estimate of ‖p - q‖₂² from `budget.samples` draws of each.

    With histograms X of p and Y of q over s draws,
    Σ X_i(X_i - 1)/(s(s - 1)) - 2 Σ X_i Y_i/s² + Σ Y_i(Y_i - 1)/(s(s - 1)).
    """
    s = budget.samples
    if s < 2:
        raise ValueError(f"collision_l2 requires at least 2 samples, got {s}.")
    pp, qq = _probs(p), _probs(q)
    if pp.size != qq.size:
        raise ValueError(f"dimension mismatch: {pp.size} != {qq.size}.")
    rng = budget.rng()
    x = rng.multinomial(s, pp).astype(np.float64)
    y = rng.multinomial(s, qq).astype(np.float64)
    pairs = s * (s - 1.0)
    return float((x * (x - 1.0)).sum() / pairs - 2.0 * (x * y).sum() / s**2 + (y * (y - 1.0)).sum() / pairs)


# baselines attachable to harness runs, keyed by the column suffix
BASELINES = {"plugin_entropy": plugin_entropy, "collision_l2": collision_l2}
