from __future__ import annotations

import numpy as np

from qdisttest.ampest.overlap import StatePreparation, estimate_overlap_magnitude, overlap_estimate
from qdisttest.core.linalg import basis_vector, kron
from qdisttest.core.states import PureState
from qdisttest.encodings.sqrt import classical_sqrt_encoding, density_sqrt_encoding
from qdisttest.oracles.oracle import PurifiedOracle
from qdisttest.poly.approx import ApproxPolynomial
from qdisttest.poly.build import build_S
from qdisttest.svt.transform import apply_svt, apply_to_state

from .base import QueryTrace, TesterVerdict, check_mode, log_schedule, make_rng
from .identities import ensure_identities
from .schedule import EntropySchedule


def transformed_overlap(o: PurifiedOracle, s: ApproxPolynomial, m: int = 1) -> float:
    """⟨ψ|Ψ̃⟩ = Σ_i p_i S̃(√(p_i/m)) from the spectrum of the source."""
    if o.is_classical:
        p = np.asarray(o.probabilities())
    else:
        p = np.clip(o.source.spectrum, 0.0, None)  # type: ignore
    return float((p * s(np.sqrt(p / m))).sum())


def _matrix_preparations(o: PurifiedOracle, s: ApproxPolynomial, quantum: bool) -> tuple[StatePreparation, StatePreparation]:
    """|ψ⟩|0⟩ and the flagged state obtained by applying S̃^(SV) of the
    square-root encoding to register B of |ψ⟩."""
    e = density_sqrt_encoding(o) if quantum else classical_sqrt_encoding(o)
    m = apply_svt(e, s)
    psi = o.purification
    tilde = apply_to_state(m, psi, 1)
    plain = PureState(kron(psi.amplitudes, basis_vector(2)), tilde.register_dims)
    return StatePreparation(plain, o.cost, "psi"), StatePreparation(tilde, o.cost + m.cost, "psi_tilde")


def _estimate_entropy(
    o: PurifiedOracle, eps: float, seed: int | None, mode: str, quantum: bool, tester: str
) -> TesterVerdict:
    check_mode(mode, o)
    rng = make_rng(seed)
    sched = EntropySchedule(eps, o.n, o.n if quantum else 1)
    if quantum:
        ensure_identities()
    s = build_S(sched.beta, sched.eta)
    trace = QueryTrace([o])
    params = {**sched.to_dict(), "degree": s.degree}
    log_schedule(tester, params)

    if mode == "matrix":
        prep_psi, prep_tilde = _matrix_preparations(o, s, quantum)
        est = overlap_estimate(prep_psi, prep_tilde, sched.M, None, rng, mode)
    else:
        cost_psi, cost_tilde = o.cost, o.cost * (1 + s.degree)
        exact = abs(transformed_overlap(o, s, sched.m))
        est = estimate_overlap_magnitude(min(exact, 1.0), cost_psi + cost_tilde, sched.M, None, rng, mode)
        prep_psi = StatePreparation(o.purification, cost_psi, "psi")
        prep_tilde = StatePreparation(o.purification, cost_tilde, "psi_tilde")

    iterates = est.amplitude.M * est.amplitude.trials
    trace.record("prepare_psi", 2 * iterates * prep_psi.cost.total, M=est.amplitude.M, trials=est.amplitude.trials)
    trace.record("prepare_transformed", 2 * iterates * prep_tilde.cost.total, degree=s.degree)
    value = sched.scale * est.value - sched.offset
    exact_value = sched.scale * est.exact - sched.offset
    return TesterVerdict(tester, trace, seed, estimate=value, exact=exact_value, params=params)


def entropy_classical(o: PurifiedOracle, eps: float, seed: int | None = 0, mode: str = "semantic") -> TesterVerdict:
    """Estimate the Shannon entropy H(p) in nats to accuracy ε.

    |ψ_p⟩ = U_p|0⟩ and |Ψ̃_p⟩, obtained by applying the singular value
    transform by S̃ of the square-root encoding, overlap in
    Σ_i p_i S̃(√p_i) ≈ H(p)/(4 ln(2/β)), which is estimated to within
    ε/(12 ln(2/β)).

    Args:
        o (PurifiedOracle): oracle for a classical distribution p on [n], n/ε ≥ 42.
        eps (float): accuracy, in (0, 1).
        seed (int | None, optional): seed of the amplitude estimation draws. Defaults to `0`.
        mode (str, optional): `"matrix"`, `"semantic"` or `"exact"`. Defaults to `"semantic"`.

    Returns:
        TesterVerdict: `estimate` is Ĥ, `exact` the value with exact amplitudes.
    """
    if not o.is_classical:
        raise ValueError("entropy_classical requires an oracle for a classical distribution.")
    return _estimate_entropy(o, eps, seed, mode, False, "entropy_classical")


def entropy_quantum(o: PurifiedOracle, eps: float, seed: int | None = 0, mode: str = "semantic") -> TesterVerdict:
    """Estimate the von Neumann entropy of ρ in nats to accuracy ε.

    The density encoding has singular values √(p_i/n), so the transformed
    overlap approximates (ln n + H(ρ))/(4 ln(2/β')) with β' = √(Δ/n), and
    ln n is subtracted from the rescaled estimate.
    """
    return _estimate_entropy(o, eps, seed, mode, True, "entropy_quantum")


def exact_entropy_estimate(p: np.ndarray, eps: float, quantum: bool = False) -> float:
    """4 ln(2/β)·Σ_i p_i S̃(√(p_i/m)) - ln m without amplitude estimation;
    `p` is the distribution or the spectrum."""
    p = np.asarray(p, dtype=np.float64)
    sched = EntropySchedule(eps, p.size, p.size if quantum else 1)
    s = build_S(sched.beta, sched.eta)
    return float(sched.scale * (p * s(np.sqrt(p / sched.m))).sum() - sched.offset)

