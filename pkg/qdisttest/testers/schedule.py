from __future__ import annotations

import math

from qdisttest.ampest.overlap import overlap_iterations
from qdisttest.ampest.sample import ae_iterations, boost_repetitions
from qdisttest.utils.errors import InvariantError

# smallest n·m/ε for which the entropy schedule is valid
MIN_RATIO = 42.0


class EntropySchedule:
    """Parameters of the entropy estimators.

    The classical estimator uses m = 1. The quantum one works with the
    singular values √(p_i/n) of the density encoding and uses m = n, which
    rescales β to √(Δ/n) and adds the offset ln n to the transformed
    overlap.
    """

    def __init__(self, eps: float, n: int, m: int = 1):
        """
        Args:
            eps (float): target accuracy, in (0, 1).
            n (int): dimension of the distribution.
            m (int, optional): rescaling of the probabilities seen by the transform. Defaults to `1`.
        """
        if not 0.0 < eps < 1.0:
            raise ValueError(f"eps={eps} must lie in (0, 1).")
        if n < 1 or m < 1:
            raise ValueError(f"n={n} and m={m} must be positive.")
        if n * m / eps < MIN_RATIO:
            raise ValueError(f"n*m/eps={n * m / eps:.4g} must be at least {MIN_RATIO:g}; pad the distribution or lower eps.")
        self.eps = eps
        self.n = n
        self.m = m
        log_ratio = math.log(n * m / eps)
        self.delta = eps / (4.0 * n * log_ratio)
        self.beta = math.sqrt(self.delta / m)
        self.log_scale = math.log(2.0 / self.beta)
        self.eta = eps / (24.0 * self.log_scale)
        self.tau = eps / (12.0 * self.log_scale)
        self.M = overlap_iterations(self.tau)
        # mass of eigenvalues below Δ costs at most Δ(ln(m/Δ) + 1) per entry
        if self.delta * (math.log(m / self.delta) + 1.0) > eps / (2.0 * n):
            raise InvariantError(f"schedule for eps={eps}, n={n}, m={m} violates the small-eigenvalue bound.")

    @property
    def scale(self) -> float:
        """4 ln(2/β): the overlap times this, minus ln m, estimates H."""
        return 4.0 * self.log_scale

    @property
    def offset(self) -> float:
        return math.log(self.m)

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "beta": self.beta,
            "eta": self.eta,
            "tau": self.tau,
            "M": self.M,
        }


class BinSchedule:
    """Bins and per-bin settings of the robust ℓ² tester.

    Bin k collects the x with (p(x) + q(x))/2 in (2^{-k-2}, 2^{-k}) and
    carries P̃ with t_k = 2^{(k+2)/2} and Q̃ with τ_k = 2^{(k-3)/2}. Its flag
    probability is E_k ≈ Σ_x s_k(x) 2^{k-12} (p(x) - q(x))².
    """

    def __init__(self, eps: float, nu: float):
        if not 0.0 < eps < 1.0:
            raise ValueError(f"eps={eps} must lie in (0, 1).")
        if not 0.0 < nu < 1.0:
            raise ValueError(f"nu={nu} must lie in (0, 1).")
        self.eps = eps
        self.nu = nu
        self.theta = nu * eps**2 / 6.0
        self.k_max = math.ceil(math.log2(1.0 / self.theta))
        self.bins = list(range(-1, self.k_max + 1))
        self.bin_fail = (nu * eps) ** 2
        self.bin_repetitions = boost_repetitions(self.bin_fail)
        self.ae_fail = 1.0 / (3.0 * self.size)
        self.eta_Q = min(0.5, self.theta / (8.0 * self.size))

    @property
    def size(self) -> int:
        return len(self.bins)

    @property
    def far_threshold(self) -> float:
        return self.eps**2 - 3.0 * self.theta

    # binning
    def bin_threshold(self, k: int) -> float:
        """Acceptance threshold of A_k on (p + q)/2, midway between
        2^{-k-2} and 2^{-k-1}."""
        return 3.0 * 2.0 ** (-k - 3)

    def bin_iterations(self, k: int) -> int:
        return ae_iterations(2.0 ** (-k - 3), min(2.0 ** (-k - 1), 0.5))

    # per-bin polynomials
    def t(self, k: int) -> float:
        return 2.0 ** ((k + 2) / 2.0)

    def tau(self, k: int) -> float:
        return 2.0 ** ((k - 3) / 2.0)

    def eta_P(self, k: int) -> float:
        return min(0.5, self.theta / (8.0 * self.size * self.t(k)))

    # per-bin amplitude estimation
    def precision(self, k: int) -> float:
        """Precision 2^{k-9}θ/|K| of the displayed per-bin quantity."""
        return 2.0 ** (k - 9) * self.theta / self.size

    def ae_tolerance(self, k: int) -> float:
        return self.precision(k) / 8.0

    def ae_cap(self, k: int) -> float:
        return 2.0 ** (k - 10) * self.eps**2

    def ae_iterations(self, k: int) -> int:
        return ae_iterations(self.ae_tolerance(k), self.ae_cap(k))

    def weight(self, k: int) -> float:
        """Weight 2^{12-k} of the measured flag probability of bin k."""
        return 2.0 ** (12 - k)

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "nu": self.nu,
            "theta": self.theta,
            "bins": self.size,
            "k_max": self.k_max,
            "bin_repetitions": self.bin_repetitions,
        }
