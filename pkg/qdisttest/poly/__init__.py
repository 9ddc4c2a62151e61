from .approx import ApproxPolynomial, Bound, Certificate, bounded_taylor_approx, certify  # noqa: F401
from .build import build_P, build_Q, build_S  # noqa: F401
from .target import AnalyticTarget, constant_target, identity_target, inverse_target, log_target  # noqa: F401

__all__ = [
    "AnalyticTarget",
    "ApproxPolynomial",
    "Bound",
    "Certificate",
    "bounded_taylor_approx",
    "build_P",
    "build_Q",
    "build_S",
    "certify",
    "constant_target",
    "identity_target",
    "inverse_target",
    "log_target",
]
