from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from qdisttest.oracles.counter import QueryCost

# per-run success probability of amplitude estimation
AE_SUCCESS = 8.0 / math.pi**2
PROB_FLOOR = 1e-15
MODES = ("matrix", "semantic", "exact")


@dataclass(frozen=True)
class AmplitudeEstimate:
    """Result of (boosted) amplitude estimation.

    `queries_charged` is M × trials × (oracle calls per Grover iterate).
    """

    value: float
    M: int
    trials: int
    queries_charged: int


def _fejer(delta: np.ndarray, m: int) -> np.ndarray:
    s = np.sin(delta)
    small = np.abs(s) < 1e-12
    safe = np.where(small, 1.0, s)
    return np.where(small, 1.0, np.sin(m * delta) ** 2 / (m**2 * safe**2))


def ae_distribution(a: float, M: int) -> tuple[np.ndarray, np.ndarray]:
    """Outcome distribution of amplitude estimation with M Grover powers.

    Outcome j ∈ {0, ..., M-1} occurs with probability
    sin²(MΔ_j)/(M² sin²Δ_j), Δ_j = θ - jπ/M, θ = arcsin √a, and reports
    sin²(jπ/M).

    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: reported values and their probabilities.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a={a} must lie in [0, 1].")
    if M < 1:
        raise ValueError(f"M={M} must be at least 1.")
    theta = math.asin(math.sqrt(a))
    j = np.arange(M)
    probs = _fejer(theta - j * np.pi / M, M)
    probs[probs < PROB_FLOOR] = 0.0
    probs /= probs.sum()
    return np.sin(j * np.pi / M) ** 2, probs


def ae_sample(a: float, M: int, rng: np.random.Generator, size: int | None = None) -> float | np.ndarray:
    values, probs = ae_distribution(a, M)
    idx = rng.choice(M, size=size, p=probs)
    return values[idx] if size is not None else float(values[idx])


def ae_error_bound(a: float, M: int) -> float:
    """2π√(a(1-a))/M + π²/M², met with probability at least 8/π²."""
    return 2.0 * math.pi * math.sqrt(a * (1.0 - a)) / M + math.pi**2 / M**2


def ae_iterations(tol: float, a_ref: float) -> int:
    """Smallest M whose error bound at every a ≤ a_ref stays within tol."""
    if tol <= 0.0:
        raise ValueError(f"tol={tol} must be positive.")
    a_ref = min(max(a_ref, 0.0), 0.5)
    b = 2.0 * math.pi * math.sqrt(a_ref * (1.0 - a_ref))
    return max(1, math.ceil((b + math.sqrt(b * b + 4.0 * math.pi**2 * tol)) / (2.0 * tol)))


def boost_repetitions(nu_fail: float | None) -> int:
    """Odd number of runs whose median fails with probability ≤ ν_fail."""
    if nu_fail is None:
        return 1
    if not 0.0 < nu_fail < 1.0:
        raise ValueError(f"nu_fail={nu_fail} must lie in (0, 1).")
    return 2 * math.ceil(18.0 * math.log(1.0 / nu_fail)) + 1


def _charge(M: int, trials: int, cost: QueryCost | None) -> int:
    # each Grover iterate uses the preparation once forward and once inverted
    if cost is None:
        return M * trials
    return cost.charge(forward=M * trials, inverse=M * trials)


def ae_boosted(
    a: float, M: int, nu_fail: float | None, rng: np.random.Generator, cost: QueryCost | None = None
) -> AmplitudeEstimate:
    """Median of `boost_repetitions(nu_fail)` independent estimates."""
    r = boost_repetitions(nu_fail)
    draws = ae_sample(a, M, rng, size=r)
    return AmplitudeEstimate(float(np.median(draws)), M, r, _charge(M, r, cost))


def estimate_amplitude(
    a: float,
    M: int,
    nu_fail: float | None,
    rng: np.random.Generator,
    mode: str = "semantic",
    cost: QueryCost | None = None,
) -> AmplitudeEstimate:
    """`ae_boosted`, except that exact mode reports `a` itself while
    charging the same queries."""
    if mode not in MODES:
        raise ValueError(f"mode={mode} must be one of {MODES}.")
    if mode == "exact":
        r = boost_repetitions(nu_fail)
        return AmplitudeEstimate(float(a), M, r, _charge(M, r, cost))
    return ae_boosted(a, M, nu_fail, rng, cost)


def acceptance_probability(a: float, M: int, threshold: float, repetitions: int) -> float:
    """Probability that the median of `repetitions` estimates is at least
    `threshold`."""
    values, probs = ae_distribution(a, M)
    p_single = float(probs[values >= threshold].sum())
    return float(binom.sf((repetitions - 1) // 2, repetitions, min(p_single, 1.0)))
