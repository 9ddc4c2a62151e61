from __future__ import annotations

import numpy as np
import torch

from qdisttest.ampest.overlap import flag_probability
from qdisttest.ampest.sample import estimate_amplitude
from qdisttest.core.functional import schatten_distance
from qdisttest.core.linalg import as_complex
from qdisttest.core.states import ClassicalDistribution, PureState
from qdisttest.encodings.block import gram_square, half_difference
from qdisttest.encodings.sqrt import classical_sqrt_encoding
from qdisttest.oracles.derived import mixture_oracle
from qdisttest.oracles.oracle import PurifiedOracle
from qdisttest.poly.approx import ApproxPolynomial
from qdisttest.poly.build import build_P, build_Q
from qdisttest.svt.transform import apply_contraction, apply_svt, apply_to_state
from qdisttest.utils.errors import InvariantError

from .base import CLOSE, FAR, QueryTrace, TesterVerdict, check_mode, check_same_n, log_schedule, make_rng
from .binning import bin_amplitudes, binning_cost, soft_selection
from .identities import ensure_identities
from .schedule import BinSchedule


def bin_polynomials(schedule: BinSchedule, k: int) -> tuple[ApproxPolynomial, ApproxPolynomial]:
    """P̃ approximating 1/(2 t_k x) and Q̃ amplifying by τ_k for bin k."""
    poly_p = build_P(schedule.t(k), schedule.eta_P(k))
    poly_q = build_Q(schedule.tau(k), 0.5, schedule.eta_Q)
    return poly_p, poly_q


class _MatrixBins:
    """Explicit encodings shared by the bins of one matrix-mode run."""

    def __init__(self, o_p: PurifiedOracle, o_q: PurifiedOracle):
        mix = mixture_oracle(o_p, o_q)
        self.state = mix.purification
        self.mixture = classical_sqrt_encoding(mix)
        self.enc_p = classical_sqrt_encoding(o_p)
        self.enc_q = classical_sqrt_encoding(o_q)

    def flagged_state(self, selection: np.ndarray, poly_p: ApproxPolynomial, poly_q: ApproxPolynomial) -> PureState:
        """Mixture purification with the bin selection √s_k, the P̃-map and
        the difference map applied in turn to register B, each behind its
        own flag qubit."""
        state = apply_contraction(torch.diag(as_complex(np.sqrt(selection))), self.state, 1)
        state = apply_to_state(apply_svt(self.mixture, poly_p), state, 1)
        diff = half_difference(gram_square(self.enc_p, poly_q), gram_square(self.enc_q, poly_q))
        return apply_contraction(diff.block, state, 1)


def semantic_factors(
    p: np.ndarray, q: np.ndarray, poly_p: ApproxPolynomial, poly_q: ApproxPolynomial
) -> tuple[np.ndarray, np.ndarray]:
    a = (p + q) / 2.0
    return poly_p(np.sqrt(a)), (poly_q(np.sqrt(p)) ** 2 - poly_q(np.sqrt(q)) ** 2) / 2.0


def _check_contractions(p: np.ndarray, q: np.ndarray, k: int) -> None:
    """For x correctly binned at k, 2^{-k-2}/(p+q) < 1/2 and
    |p - q|/2^{-k+3} < 1/4."""
    s = p + q
    binned = (s > 2.0 ** (-k - 1)) & (s < 2.0 ** (-k + 1))
    if not np.any(binned):
        return
    if np.any(2.0 ** (-k - 2) / s[binned] >= 0.5) or np.any(np.abs(p - q)[binned] / 2.0 ** (-k + 3) >= 0.25):
        raise InvariantError(f"per-bin maps of bin {k} are not contractions on its elements.")


def l2_classical_robust(
    o_p: PurifiedOracle,
    o_q: PurifiedOracle,
    eps: float,
    nu: float = 0.5,
    seed: int | None = 0,
    mode: str = "semantic",
) -> TesterVerdict:
    """Decide ‖p - q‖₂ ≥ ε against ‖p - q‖₂ ≤ (1 - ν)ε.

    Every x is soft-binned by the magnitude of (p(x) + q(x))/2; bin k then
    applies √(2^{-k-2}/(p+q)) through P̃ on the mixture encoding and
    (p - q)/2^{-k+3} through Q̃-amplified square-root encodings, their Gram
    squares and a half difference. The flag probability E_k of each bin is
    estimated to 2^{k-12}θ/|K| and Σ_k 2^{12-k} E_k approximates
    ‖p - q‖₂² within 3θ.

    Args:
        o_p (PurifiedOracle): oracle for p.
        o_q (PurifiedOracle): oracle for q on the same [n].
        eps (float): distance, in (0, 1).
        nu (float, optional): robustness gap, in (0, 1). Defaults to `0.5`.
        seed (int | None, optional): seed of the amplitude estimation draws. Defaults to `0`.
        mode (str, optional): `"matrix"`, `"semantic"` or `"exact"`. Defaults to `"semantic"`.

    Returns:
        TesterVerdict: `"far"` iff the combined estimate is at least ε² - 3θ.
    """
    check_same_n(o_p, o_q)
    check_mode(mode, o_p, o_q)
    if not (o_p.is_classical and o_q.is_classical):
        raise ValueError("l2_classical_robust requires oracles for classical distributions.")
    ensure_identities()
    rng = make_rng(seed)
    sched = BinSchedule(eps, nu)
    trace = QueryTrace([o_p, o_q])
    params = sched.to_dict()
    log_schedule("l2_classical_robust", params)

    p, q = np.asarray(o_p.probabilities()), np.asarray(o_q.probabilities())
    a = bin_amplitudes(o_p, o_q, mode)
    selection = soft_selection(a, sched)
    mixture_cost = o_p.cost + o_q.cost
    bins = _MatrixBins(o_p, o_q) if mode == "matrix" else None

    estimate = exact = 0.0
    for i, k in enumerate(sched.bins):
        poly_p, poly_q = bin_polynomials(sched, k)
        prep = (
            mixture_cost
            + binning_cost(sched, k, mixture_cost)
            + mixture_cost * poly_p.degree
            + (o_p.cost + o_q.cost) * (2 * poly_q.degree)
        )
        if bins is not None:
            state = bins.flagged_state(selection[i], poly_p, poly_q)
            e_k, est = flag_probability(state, sched.ae_iterations(k), sched.ae_fail, rng, mode, prep)
        else:
            if mode == "exact":
                _check_contractions(p, q, k)
            pf, dq = semantic_factors(p, q, poly_p, poly_q)
            e_k = float(np.clip((selection[i] * a * pf**2 * dq**2).sum(), 0.0, 1.0))
            est = estimate_amplitude(e_k, sched.ae_iterations(k), sched.ae_fail, rng, mode, prep)
        trace.record(
            f"bin[{k}]",
            est.queries_charged,
            M=est.M,
            trials=est.trials,
            degree_P=poly_p.degree,
            degree_Q=poly_q.degree,
        )
        estimate += sched.weight(k) * est.value
        exact += sched.weight(k) * e_k

    decision = FAR if estimate >= sched.far_threshold else CLOSE
    params["distance_sq"] = schatten_distance(ClassicalDistribution(p), ClassicalDistribution(q), 2.0) ** 2
    return TesterVerdict("l2_classical_robust", trace, seed, decision, estimate, exact, params)


def combined_exact(p: np.ndarray, q: np.ndarray, eps: float, nu: float) -> float:
    """Σ_k 2^{12-k} E_k with every flag probability computed exactly."""
    sched = BinSchedule(eps, nu)
    p, q = np.asarray(p, dtype=np.float64), np.asarray(q, dtype=np.float64)
    a = (p + q) / 2.0
    selection = soft_selection(a, sched)
    total = 0.0
    for i, k in enumerate(sched.bins):
        poly_p, poly_q = bin_polynomials(sched, k)
        pf, dq = semantic_factors(p, q, poly_p, poly_q)
        total += sched.weight(k) * float((selection[i] * a * pf**2 * dq**2).sum())
    return total

