from __future__ import annotations

import math

from qdisttest.oracles.derived import correlation_gap, product_oracle
from qdisttest.oracles.oracle import PurifiedOracle

from .base import TesterVerdict, check_same_n
from .l2 import l2_classical_robust
from .quantum import l2_quantum

# robustness gap of the ℓ² tester used for ℓ¹ closeness
L1_NU = 0.5


def l1_closeness(
    o_p: PurifiedOracle, o_q: PurifiedOracle, eps: float, seed: int | None = 0, mode: str = "semantic"
) -> TesterVerdict:
    """Decide p = q against ‖p - q‖₁ ≥ ε.

    ‖p - q‖₁ ≥ ε forces ‖p - q‖₂ ≥ ε/√n, so the ℓ² tester is run at
    distance ε/√n with ν = 1/2: classical oracles go to the robust tester,
    density oracles to the quantum one.
    """
    check_same_n(o_p, o_q)
    if not 0.0 < eps <= 2.0:
        raise ValueError(f"eps={eps} must lie in (0, 2].")
    eps2 = eps / math.sqrt(o_p.n)
    if eps2 >= 1.0:
        raise ValueError(f"eps/sqrt(n)={eps2:.4g} must be below 1.")
    if o_p.is_classical and o_q.is_classical:
        inner = l2_classical_robust(o_p, o_q, eps2, L1_NU, seed, mode)
    else:
        inner = l2_quantum(o_p, o_q, eps2, L1_NU, seed, mode)
    inner.tester = "l1_closeness"
    inner.params.update({"eps_l1": eps, "eps_l2": eps2, "inner": "l2_classical_robust" if o_p.is_classical else "l2_quantum"})
    return inner


def independence(o: PurifiedOracle, n: int, m: int, eps: float, seed: int | None = 0, mode: str = "semantic") -> TesterVerdict:
    """Decide whether p on [n]×[m] is a product distribution or ε-far in
    ℓ¹ from p_A × p_B.

    Two uses of U_p prepare a purification of p_A × p_B, and the result is
    ℓ¹ closeness between p and that product on [nm].
    """
    if n < 1 or m < 1 or o.n != n * m:
        raise ValueError(f"oracle on {o.n} points cannot be factored as {n}x{m}.")
    verdict = l1_closeness(o, product_oracle(o, n, m), eps, seed, mode)
    verdict.tester = "independence"
    verdict.params.update({"n_a": n, "n_b": m})
    if o.is_classical:
        verdict.params["correlation_l1"] = correlation_gap(o.source, n, m)  # type: ignore
    return verdict
