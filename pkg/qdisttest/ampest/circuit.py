from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
import torch

from qdisttest.core.linalg import DTYPE, as_complex, basis_vector, dagger
from qdisttest.utils.errors import InvariantError

from .sample import ae_distribution

VALIDATION_M = (2, 4, 8)
VALIDATION_A = (0.0, 0.05, 0.3, 0.5, 0.77, 1.0)
VALIDATION_TV = 1e-8


def grover_iterate(theta: float) -> tuple[torch.Tensor, torch.Tensor]:
    """Preparation A = R_y(2θ) of a qubit with good state |1⟩ and the
    iterate Q = -A S_0 A† S_χ."""
    c, s = math.cos(theta), math.sin(theta)
    a = as_complex([[c, -s], [s, c]])
    s0 = as_complex(np.diag([-1.0, 1.0]))
    s_chi = as_complex(np.diag([1.0, -1.0]))
    return a, -a @ s0 @ dagger(a) @ s_chi


def circuit_distribution(a: float, M: int) -> np.ndarray:
    """Counting-register distribution of the amplitude estimation circuit:
    Σ_y |y⟩ Q^y A|0⟩/√M followed by the inverse Fourier transform."""
    prep, q = grover_iterate(math.asin(math.sqrt(a)))
    start = prep @ basis_vector(2)
    rows = torch.stack([torch.linalg.matrix_power(q, y) @ start for y in range(M)]) / math.sqrt(M)
    jy = torch.outer(torch.arange(M), torch.arange(M)).to(torch.float64)
    inv_qft = torch.exp(-2j * math.pi * jy / M).to(DTYPE) / math.sqrt(M)
    amps = inv_qft @ rows
    return (amps.abs() ** 2).sum(dim=1).numpy()


def _grouped(probs: np.ndarray) -> np.ndarray:
    # outcomes j and M - j report the same value
    M = probs.size
    out = np.zeros(M // 2 + 1)
    for j, p in enumerate(probs):
        out[min(j, M - j) if j else 0] += p
    return out


def validation_distance(a: float, M: int) -> float:
    """Total-variation distance between the sampled and the simulated
    outcome distributions, over reported values."""
    _, probs = ae_distribution(a, M)
    return 0.5 * float(np.abs(_grouped(probs) - _grouped(circuit_distribution(a, M))).sum())


@lru_cache(maxsize=None)
def ensure_validated() -> float:
    """Compare the sampled distribution with the circuit on a grid of
    amplitudes at M ∈ {2, 4, 8}; raise if they disagree.

    Returns:
        float: the largest total-variation distance seen.
    """
    worst = max(validation_distance(a, M) for a in VALIDATION_A for M in VALIDATION_M)
    if worst > VALIDATION_TV:
        raise InvariantError(f"amplitude estimation distribution deviates from the circuit by TV={worst:.3e}.")
    return worst
