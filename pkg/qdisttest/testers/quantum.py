from __future__ import annotations

import math

import torch

from qdisttest.ampest.overlap import flag_probability
from qdisttest.ampest.sample import ae_iterations, estimate_amplitude
from qdisttest.core.functional import schatten_distance, trace_product
from qdisttest.core.linalg import hadamard, kron, maximally_entangled
from qdisttest.core.states import ClassicalDistribution, DensityOperator, PureState
from qdisttest.encodings.block import block_encode_density, half_difference
from qdisttest.oracles.counter import QueryCost
from qdisttest.oracles.derived import mixture_oracle
from qdisttest.oracles.oracle import PurifiedOracle
from qdisttest.svt.transform import apply_contraction

from .base import CLOSE, FAR, QueryTrace, TesterVerdict, check_mode, check_same_n, log_schedule, make_rng

ROUTES = ("auto", "maximally_entangled", "swap")
# failure probability of each of the three SWAP-test estimates
SWAP_FAIL = 0.1


def _density(o: PurifiedOracle) -> DensityOperator:
    src = o.source
    return src.as_density() if isinstance(src, ClassicalDistribution) else src  # type: ignore


def _difference_block(o_rho: PurifiedOracle, o_sigma: PurifiedOracle) -> torch.Tensor:
    """(ρ - σ)/2, read off the half-difference block-encoding."""
    return half_difference(block_encode_density(o_rho), block_encode_density(o_sigma)).block


def difference_cost(o_rho: PurifiedOracle, o_sigma: PurifiedOracle) -> QueryCost:
    """Each density block-encoding uses its oracle twice."""
    return o_rho.cost * 2 + o_sigma.cost * 2


def swap_test_probability(o1: PurifiedOracle, o2: PurifiedOracle, mode: str = "semantic") -> float:
    """Probability (1 + Tr[ρ_1 ρ_2])/2 that the SWAP test on the two
    B registers accepts."""
    if mode != "matrix":
        return (1.0 + trace_product(_density(o1), _density(o2)).real) / 2.0
    n = o1.n
    psi = kron(o1.purification.amplitudes, o2.purification.amplitudes)
    dims = (o1.d_a, n, o2.d_a, n)
    # controlled SWAP of the two B registers between Hadamards on the control
    swapped = psi.reshape(dims).permute(0, 3, 2, 1).flatten()
    out = hadamard() @ torch.stack([psi, swapped]) / math.sqrt(2.0)
    state = PureState(out.flatten(), (2,) + dims, flag_registers=(0,))
    return float((state.tensor()[0].abs() ** 2).sum())


def _route(o: PurifiedOracle, eps: float, route: str) -> str:
    if route not in ROUTES:
        raise ValueError(f"route={route} must be one of {ROUTES}.")
    if route != "auto":
        return route
    return "maximally_entangled" if math.sqrt(o.n) <= 1.0 / eps else "swap"


def l2_quantum(
    o_rho: PurifiedOracle,
    o_sigma: PurifiedOracle,
    eps: float,
    nu: float = 0.5,
    seed: int | None = 0,
    mode: str = "semantic",
    route: str = "auto",
) -> TesterVerdict:
    """Decide ‖ρ - σ‖₂ ≥ ε against ‖ρ - σ‖₂ ≤ (1 - ν)ε.

    When √n ≤ 1/ε the half difference of the density block-encodings acts
    on half of a maximally entangled state, whose flag probability is
    Tr[(ρ - σ)²]/(4n). Otherwise Tr[ρ²] - 2Tr[ρσ] + Tr[σ²] is assembled from
    three SWAP-test acceptance probabilities, each estimated to νε²/32.
    """
    check_same_n(o_rho, o_sigma)
    check_mode(mode, o_rho, o_sigma)
    if not 0.0 < eps < 1.0 or not 0.0 < nu < 1.0:
        raise ValueError(f"eps={eps} and nu={nu} must lie in (0, 1).")
    rng = make_rng(seed)
    n = o_rho.n
    chosen = _route(o_rho, eps, route)
    trace = QueryTrace([o_rho, o_sigma])
    dist_sq = schatten_distance(_density(o_rho), _density(o_sigma), 2.0) ** 2
    params: dict = {"eps": eps, "nu": nu, "n": n, "route": chosen, "distance_sq": dist_sq}

    if chosen == "maximally_entangled":
        threshold = (eps**2 + (1.0 - nu) ** 2 * eps**2) / (8.0 * n)
        tol = (eps**2 - (1.0 - nu) ** 2 * eps**2) / (8.0 * n)
        M = ae_iterations(tol, eps**2 / (4.0 * n))
        cost = difference_cost(o_rho, o_sigma)
        if mode == "matrix":
            phi = PureState(maximally_entangled(n), (n, n))
            flagged = apply_contraction(_difference_block(o_rho, o_sigma), phi, 0)
            exact, est = flag_probability(flagged, M, None, rng, mode, cost)
        else:
            exact = min(dist_sq / (4.0 * n), 1.0)
            est = estimate_amplitude(exact, M, None, rng, mode, cost)
        trace.record("maximally_entangled", est.queries_charged, M=M, trials=est.trials)
        estimate, exact_stat = 4.0 * n * est.value, 4.0 * n * exact
        decision = FAR if est.value >= threshold else CLOSE
        params.update({"M": M, "threshold": 4.0 * n * threshold})
    else:
        delta = nu * eps**2 / 32.0
        M = math.ceil(2.0 * math.pi / delta)
        traces, exacts = [], []
        for name, o1, o2 in (("swap_rho_rho", o_rho, o_rho), ("swap_rho_sigma", o_rho, o_sigma), ("swap_sigma_sigma", o_sigma, o_sigma)):
            exact = swap_test_probability(o1, o2, mode)
            est = estimate_amplitude(exact, M, SWAP_FAIL, rng, mode, o1.cost + o2.cost)
            trace.record(name, est.queries_charged, M=M, trials=est.trials)
            traces.append(2.0 * est.value - 1.0)
            exacts.append(2.0 * exact - 1.0)
        estimate = traces[0] - 2.0 * traces[1] + traces[2]
        exact_stat = exacts[0] - 2.0 * exacts[1] + exacts[2]
        threshold = (eps**2 + (1.0 - nu) ** 2 * eps**2) / 2.0
        decision = FAR if estimate >= threshold else CLOSE
        params.update({"M": M, "threshold": threshold})

    log_schedule("l2_quantum", params)
    return TesterVerdict("l2_quantum", trace, seed, decision, estimate, exact_stat, params)


def l3_closeness(
    o_rho: PurifiedOracle, o_sigma: PurifiedOracle, eps: float, seed: int | None = 0, mode: str = "semantic"
) -> TesterVerdict:
    """Decide ρ = σ against ‖ρ - σ‖₃ ≥ ε.

    The half difference (ρ - σ)/2 applied to the purification of (ρ + σ)/2
    succeeds with probability a = Tr[(ρ - σ)²(ρ + σ)]/8, which is 0 in the
    first case and at least ε³/8 in the second; "far" iff the estimate of a
    is at least ε³/16.
    """
    check_same_n(o_rho, o_sigma)
    check_mode(mode, o_rho, o_sigma)
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps={eps} must lie in (0, 1).")
    rng = make_rng(seed)
    threshold = eps**3 / 16.0
    M = ae_iterations(threshold, eps**3 / 8.0)
    cost = (o_rho.cost + o_sigma.cost) + difference_cost(o_rho, o_sigma)
    trace = QueryTrace([o_rho, o_sigma])
    rho, sigma = _density(o_rho), _density(o_sigma)
    if mode == "matrix":
        mix = mixture_oracle(o_rho, o_sigma)
        flagged = apply_contraction(_difference_block(o_rho, o_sigma), mix.purification, 1)
        exact, est = flag_probability(flagged, M, None, rng, mode, cost)
    else:
        d = rho.matrix - sigma.matrix
        exact = float(min(max(trace_product(d, d, rho.matrix + sigma.matrix).real / 8.0, 0.0), 1.0))
        est = estimate_amplitude(exact, M, None, rng, mode, cost)
    trace.record("difference_on_mixture", est.queries_charged, M=M, trials=est.trials)
    params = {"eps": eps, "M": M, "threshold": threshold, "distance_l3": schatten_distance(rho, sigma, 3.0)}
    log_schedule("l3_closeness", params)
    decision = FAR if est.value >= threshold else CLOSE
    return TesterVerdict("l3_closeness", trace, seed, decision, est.value, exact, params)

