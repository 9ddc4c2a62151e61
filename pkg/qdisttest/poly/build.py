from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as C

from qdisttest.utils.errors import CertificationError

from .approx import ApproxPolynomial, Bound, bounded_coefficients, bounded_taylor_approx, certify, symmetrize
from .target import X, AnalyticTarget, constant_target, inverse_target, log_target


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= 0.5:
        raise ValueError(f"eta={eta} must lie in (0, 1/2].")


def _finish(
    coeffs: np.ndarray, parity: str, bounds: list[Bound], reference: AnalyticTarget, description: dict
) -> ApproxPolynomial:
    coeffs = bounded_coefficients(coeffs)
    cert = certify(coeffs, bounds, reference)
    if not cert.passed:
        raise CertificationError(f"{description['name']} polynomial failed certification: {cert.failures()}")
    return ApproxPolynomial(coeffs, parity, description, cert)


@lru_cache(maxsize=None)
def build_S(beta: float, eta: float) -> ApproxPolynomial:
    """Even polynomial S̃ with |S̃(x) - ln(1/x)/(2 ln(2/β))| ≤ η on [β, 1]
    and |S̃| ≤ 1 on [-1, 1].

    Args:
        beta (float): left end of the approximation interval, in (0, 1].
        eta (float): accuracy, in (0, 1/2].

    Returns:
        ApproxPolynomial: S̃(x) = S(x) + S(-x) where S is the bounded Taylor
            approximation at 1 with r = 1 - β, ν = β/2, B = 1/2, ε = η/2.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta={beta} must lie in (0, 1].")
    _check_eta(eta)
    target = log_target(beta)
    s = bounded_taylor_approx(target, 1.0 - beta, beta / 2.0, 0.5, eta / 2.0)
    bounds = [
        Bound("approximation", beta, 1.0, eta, "error"),
        Bound("bounded", -1.0, 1.0, 1.0, "magnitude"),
    ]
    return _finish(symmetrize(s.coeffs, "even"), "even", bounds, target, {"name": "S", "beta": beta, "eta": eta})


@lru_cache(maxsize=None)
def build_P(t: float, eta: float) -> ApproxPolynomial:
    """Even polynomial P̃ with |P̃(x) - 1/(2tx)| ≤ η on [1/t, 1] and
    |P̃| ≤ 1 on [-1, 1]."""
    if t < 1.0:
        raise ValueError(f"t={t} must be at least 1.")
    _check_eta(eta)
    target = inverse_target(t)
    p = bounded_taylor_approx(target, 1.0 - 1.0 / t, 1.0 / (4.0 * t), 2.0 / 3.0, min(eta / 2.0, 1.0 / 6.0))
    bounds = [
        Bound("approximation", 1.0 / t, 1.0, eta, "error"),
        Bound("bounded", -1.0, 1.0, 1.0, "magnitude"),
    ]
    return _finish(symmetrize(p.coeffs, "even"), "even", bounds, target, {"name": "P", "t": t, "eta": eta})


@lru_cache(maxsize=None)
def build_Q(t: float, beta: float, eta: float) -> ApproxPolynomial:
    """Odd polynomial Q̃ with |Q̃(x) - tx| ≤ η·|tx| on
    [-(1-β)/t, (1-β)/t] and |Q̃| ≤ 1 on [-1, 1].

    For t ≤ 1 the exact linear map tx is returned. Otherwise Q̃ = tx·W
    where W is an even window equal to 1 up to min(η, β)/(2t) on
    |x| ≤ (1-β)/t and decaying beyond 1/t.
    """
    if t <= 0.0:
        raise ValueError(f"t={t} must be positive.")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta={beta} must lie in (0, 1].")
    _check_eta(eta)
    description = {"name": "Q", "t": t, "beta": beta, "eta": eta}
    edge = (1.0 - beta) / t
    bounds = [
        Bound("approximation", -edge, edge, eta, "relative"),
        Bound("bounded", -1.0, 1.0, 1.0, "magnitude"),
    ]
    if t <= 1.0:
        coeffs = np.array([0.0, t])
        cert = certify(coeffs, bounds, _scaled_identity(t))
        return ApproxPolynomial(coeffs, "odd", description, cert)
    w = bounded_taylor_approx(constant_target(1.0, 0.0), edge, beta / t, 1.0, min(eta, beta) / (2.0 * t))
    coeffs = t * C.chebmulx(symmetrize(w.coeffs, "even", halve=True))
    # chebmulx of an even series is odd up to exact zeros
    coeffs[0::2] = 0.0
    return _finish(coeffs, "odd", bounds, _scaled_identity(t), description)


def _scaled_identity(t: float) -> AnalyticTarget:
    return AnalyticTarget(t * X, 0.0, "linear", {"t": t})
