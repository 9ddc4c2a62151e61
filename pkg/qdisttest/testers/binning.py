from __future__ import annotations

import numpy as np

from qdisttest.ampest.sample import acceptance_probability, estimate_amplitude
from qdisttest.oracles.counter import QueryCost
from qdisttest.oracles.derived import mixture_oracle
from qdisttest.oracles.oracle import PurifiedOracle

from .base import check_mode, check_same_n
from .schedule import BinSchedule


def bin_amplitudes(o_p: PurifiedOracle, o_q: PurifiedOracle, mode: str = "semantic") -> np.ndarray:
    """Squared amplitude (p(x) + q(x))/2 of |x⟩ in the purification of the
    mixture, read off the prepared state in matrix mode."""
    check_same_n(o_p, o_q)
    if mode == "matrix":
        psi = mixture_oracle(o_p, o_q).purification.tensor()
        return (psi.abs() ** 2).sum(dim=0).numpy()
    return (np.asarray(o_p.probabilities()) + np.asarray(o_q.probabilities())) / 2.0


def acceptance_table(a: np.ndarray, schedule: BinSchedule) -> np.ndarray:
    """Probability that A_k accepts x, shape (|K|, n)."""
    a = np.clip(np.asarray(a, dtype=np.float64), 0.0, 1.0)
    out = np.zeros((schedule.size, a.size))
    cache: dict[float, float] = {}
    for i, k in enumerate(schedule.bins):
        M = schedule.bin_iterations(k)
        thr = schedule.bin_threshold(k)
        cache.clear()
        for x, ax in enumerate(a):
            if ax not in cache:
                cache[ax] = acceptance_probability(float(ax), M, thr, schedule.bin_repetitions)
            out[i, x] = cache[ax]
    return out


def soft_selection(a: np.ndarray, schedule: BinSchedule) -> np.ndarray:
    """s_k(x): probability that the bins are tried in order and k is the
    first to accept x. Rows follow `schedule.bins`; columns may sum to less
    than 1, the rest being the mass labeled "less than θ"."""
    acc = acceptance_table(a, schedule)
    reject_before = np.cumprod(np.vstack([np.ones((1, acc.shape[1])), 1.0 - acc[:-1]]), axis=0)
    return reject_before * acc


def magnitude_bin(
    o_p: PurifiedOracle,
    o_q: PurifiedOracle,
    x: int,
    schedule: BinSchedule,
    rng: np.random.Generator,
    mode: str = "semantic",
) -> int | None:
    """Run A_k on |x⟩ for k = -1, 0, ... and return the first k that
    accepts, or None when every bin rejects (p(x) + q(x) below about θ).

    A_k is boosted amplitude estimation of (p(x) + q(x))/2 thresholded at
    3·2^{-k-3}; each Grover iterate uses the mixture preparation, which
    queries both oracles once.
    """
    check_mode(mode, o_p, o_q)
    if not 0 <= x < o_p.n:
        raise ValueError(f"x={x} must lie in [0, {o_p.n}).")
    a = float(bin_amplitudes(o_p, o_q, mode)[x])
    cost: QueryCost = o_p.cost + o_q.cost
    for k in schedule.bins:
        est = estimate_amplitude(a, schedule.bin_iterations(k), schedule.bin_fail, rng, mode, cost)
        if est.value >= schedule.bin_threshold(k):
            return k
    return None


def binning_cost(schedule: BinSchedule, k: int, mixture_cost: QueryCost) -> QueryCost:
    """Cost of coherently running A_{-1}, ..., A_k and uncomputing them."""
    uses = 0
    for kk in schedule.bins:
        if kk > k:
            break
        # forward and inverse preparation per Grover iterate, twice for uncomputation
        uses += 4 * schedule.bin_iterations(kk) * schedule.bin_repetitions
    return mixture_cost * uses
