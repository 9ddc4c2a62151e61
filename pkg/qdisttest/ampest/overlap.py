from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import torch

from qdisttest.core.states import PureState
from qdisttest.oracles.counter import QueryCost

from .sample import AmplitudeEstimate, estimate_amplitude


@dataclass(frozen=True)
class StatePreparation:
    """A prepared pure state together with the oracle calls one
    preparation (or its inverse) costs."""

    state: PureState
    cost: QueryCost
    name: str = ""


@dataclass(frozen=True)
class OverlapEstimate:
    """Estimate of |⟨s2|s1⟩| and the amplitude estimate behind it."""

    value: float
    exact: float
    amplitude: AmplitudeEstimate

    @property
    def queries_charged(self) -> int:
        return self.amplitude.queries_charged


def flag_probability(
    state: PureState,
    M: int,
    nu_fail: float | None,
    rng: np.random.Generator,
    mode: str = "semantic",
    cost: QueryCost | None = None,
) -> tuple[float, AmplitudeEstimate]:
    """Probability that every flag register of `state` reads |0⟩, exactly
    and estimated by amplitude estimation.

    Returns:
        tuple[float, AmplitudeEstimate]: the exact probability and its estimate.
    """
    if not state.flag_registers:
        raise ValueError(f"{state} has no flag register.")
    psi = state.tensor()
    index = [slice(None)] * len(state.register_dims)
    for f in state.flag_registers:
        index[f] = 0
    exact = float((psi[tuple(index)].abs() ** 2).sum())
    exact = min(max(exact, 0.0), 1.0)
    return exact, estimate_amplitude(exact, M, nu_fail, rng, mode, cost)


def estimate_overlap_magnitude(
    exact: float,
    cost: QueryCost,
    M: int,
    nu_fail: float | None,
    rng: np.random.Generator,
    mode: str = "semantic",
) -> OverlapEstimate:
    """Amplitude estimation of a = exact² on the all-zero amplitude; the
    square root of the estimate is returned, which is accurate to π/M
    whenever the estimate succeeds."""
    a = min(exact * exact, 1.0)
    est = estimate_amplitude(a, M, nu_fail, rng, mode, cost)
    return OverlapEstimate(math.sqrt(est.value), exact, est)


def overlap_estimate(
    prep1: StatePreparation,
    prep2: StatePreparation,
    M: int,
    nu_fail: float | None,
    rng: np.random.Generator,
    mode: str = "semantic",
) -> OverlapEstimate:
    """|⟨s2|s1⟩| estimated as the |0...0⟩ amplitude of prep2† prep1 |0...0⟩.

    Each Grover iterate runs both preparations forward and inverted once,
    so both costs are charged M·r times each way.
    """
    s1, s2 = prep1.state, prep2.state
    if s1.dim != s2.dim:
        raise ValueError(f"state dimensions {s1.dim} and {s2.dim} differ.")
    exact = float(torch.vdot(s2.amplitudes, s1.amplitudes).abs())
    return estimate_overlap_magnitude(min(exact, 1.0), prep1.cost + prep2.cost, M, nu_fail, rng, mode)


def overlap_iterations(tol: float) -> int:
    """M = ⌈π/tol⌉ bounds the error of the overlap magnitude by tol."""
    if tol <= 0.0:
        raise ValueError(f"tol={tol} must be positive.")
    return math.ceil(math.pi / tol)
