from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P
from scipy.fft import dct
from scipy.special import erfc, erfcinv
import sympy as sym

from qdisttest.utils.errors import CertificationError

from .target import X, AnalyticTarget

CERT_GRID_SIZE = 10_000
CERT_SLACK = 1e-12
# largest interpolation grid tried before giving up
MAX_INTERP_NODES = 2**17
# monomial coefficients are only reported up to this degree
MAX_DISPLAY_DEGREE = 30


def chebyshev_nodes(n: int) -> np.ndarray:
    """First-kind Chebyshev points cos(π(j + 1/2)/n), j = 0..n-1."""
    return np.cos(np.pi * (np.arange(n) + 0.5) / n)


def certification_grid(extra: tuple[float, ...] = ()) -> np.ndarray:
    pts = np.concatenate([chebyshev_nodes(CERT_GRID_SIZE), [-1.0, 1.0], np.clip(np.asarray(extra, dtype=float), -1, 1)])
    return np.unique(pts)


@dataclass(frozen=True)
class Bound:
    """One sup-norm inequality checked on the certification grid.

    kind is `"error"` (|P - f| ≤ limit), `"relative"` (|P - f| ≤ limit·|f|)
    or `"magnitude"` (|P| ≤ limit). With `outside=True` the check runs on
    [-1, 1] minus the open interval (lower, upper).
    """

    name: str
    lower: float
    upper: float
    limit: float
    kind: str = "error"
    outside: bool = False


@dataclass(frozen=True)
class CertificateCheck:
    name: str
    lower: float
    upper: float
    limit: float
    kind: str
    outside: bool
    measured: float

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.limit + CERT_SLACK)


class Certificate:
    """Outcome of checking a polynomial against a list of bounds."""

    def __init__(self, checks: list[CertificateCheck], grid_size: int):
        self.checks = tuple(checks)
        self.grid_size = grid_size

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CertificateCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CertificateCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "passed": self.passed,
            "checks": [{**asdict(c), "passed": c.passed} for c in self.checks],
        }

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(passed={self.passed}, checks={[c.name for c in self.checks]})"


def certify(coeffs: np.ndarray, bounds: list[Bound], reference: AnalyticTarget | None = None) -> Certificate:
    """Evaluate the Chebyshev series `coeffs` against every bound."""
    extra: list[float] = []
    for b in bounds:
        extra += [b.lower, b.upper]
    grid = certification_grid(tuple(x for x in extra if np.isfinite(x)))
    values = C.chebval(grid, coeffs)
    checks = []
    for b in bounds:
        if b.outside:
            sel = (grid < b.lower) | (grid > b.upper)
        else:
            sel = (grid >= b.lower) & (grid <= b.upper)
        if not np.any(sel):
            measured = 0.0
        elif b.kind == "magnitude":
            measured = float(np.abs(values[sel]).max())
        else:
            assert reference is not None
            # the reference is only evaluated where it is compared
            ref = reference(grid[sel])
            err = np.abs(values[sel] - ref)
            if b.kind == "relative":
                scale = np.abs(ref)
                nz = scale > 1e-300
                measured = float((err[nz] / scale[nz]).max()) if np.any(nz) else 0.0
            else:
                measured = float(err.max())
        checks.append(CertificateCheck(b.name, b.lower, b.upper, b.limit, b.kind, b.outside, measured))
    return Certificate(checks, grid.size)


class ApproxPolynomial:
    """Real polynomial stored as Chebyshev coefficients, with declared
    parity, a description of what it approximates and its certificate."""

    def __init__(
        self,
        coeffs: np.ndarray | list[float],
        parity: str | None = None,
        target: dict | None = None,
        certificate: Certificate | None = None,
    ):
        """
        Args:
            coeffs (numpy.ndarray | list[float]): Chebyshev coefficients c_0, c_1, ....
            parity (str | None, optional): `"even"`, `"odd"` or None for mixed. Defaults to `None`.
            target (dict | None, optional): description of the approximated function. Defaults to `None`.
            certificate (Certificate | None, optional): sup-norm checks. Defaults to `None`.
        """
        c = np.real(np.asarray(coeffs, dtype=np.complex128)).astype(np.float64)
        if c.size == 0:
            c = np.zeros(1)
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size > 0 else c[:1]
        if parity not in (None, "even", "odd"):
            raise ValueError(f"parity={parity} must be 'even', 'odd' or None.")
        if parity is not None:
            wrong = c[1::2] if parity == "even" else c[0::2]
            if np.any(wrong != 0.0):
                raise ValueError(f"coefficients of wrong parity for an {parity} polynomial are not zero.")
        c.setflags(write=False)
        self._coeffs = c
        self.parity = parity
        self.target = dict(target or {})
        self.certificate = certificate

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    @property
    def is_certified(self) -> bool:
        return self.certificate is not None and self.certificate.passed

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        return C.chebval(np.asarray(x, dtype=np.float64), self._coeffs)

    def monomial_coeffs(self) -> np.ndarray:
        return C.cheb2poly(self._coeffs)

    def horner(self, x: np.ndarray | float) -> np.ndarray:
        """Evaluation through the monomial basis; only stable at low
        degree."""
        return P.polyval(np.asarray(x, dtype=np.float64), self.monomial_coeffs())

    def max_abs(self) -> float:
        return float(np.abs(self(certification_grid())).max())

    def to_dict(self) -> dict:
        d: dict = {
            "parity": self.parity,
            "degree": self.degree,
            "target": self.target,
            "chebyshev": self._coeffs.tolist(),
            "certificate": self.certificate.to_dict() if self.certificate is not None else None,
        }
        if self.degree <= MAX_DISPLAY_DEGREE:
            d["monomial"] = self.monomial_coeffs().tolist()
        return d

    @classmethod
    def from_chebyshev(
        cls, coeffs: np.ndarray | list[float], parity: str | None, target: dict | None = None, rescale: bool = False
    ) -> ApproxPolynomial:
        """Polynomial certified only for |P| ≤ 1 on [-1, 1]."""
        c = np.asarray(coeffs, dtype=np.float64)
        if rescale:
            c = bounded_coefficients(c)
        cert = certify(c, [Bound("bounded", -1.0, 1.0, 1.0, "magnitude")])
        if not cert.passed:
            raise CertificationError(f"polynomial exceeds 1 on [-1, 1]: {cert.failures()}")
        return cls(c, parity, target, cert)

    def squared(self) -> ApproxPolynomial:
        """P², which is even whenever P has definite parity."""
        if self.parity is None:
            raise ValueError("squaring requires a polynomial of definite parity.")
        c = C.chebmul(self._coeffs, self._coeffs)
        c[1::2] = 0.0
        return ApproxPolynomial.from_chebyshev(c, "even", {"name": "square", "of": self.target}, rescale=True)

    @classmethod
    def linear(cls, scale: float = 1.0) -> ApproxPolynomial:
        """The exact odd polynomial scale·x, |scale| ≤ 1."""
        return cls.from_chebyshev([0.0, scale], "odd", {"name": "linear", "scale": scale})

    @classmethod
    def square(cls) -> ApproxPolynomial:
        """x² = (T_0 + T_2)/2."""
        return cls.from_chebyshev([0.5, 0.0, 0.5], "even", {"name": "square"})

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(degree={self.degree}, parity={self.parity}, target={self.target.get('name')})"


def symmetrize(coeffs: np.ndarray, parity: str, halve: bool = False) -> np.ndarray:
    """Coefficients of P(x) ± P(-x), optionally halved."""
    c = np.asarray(coeffs, dtype=np.float64)
    signs = (-1.0) ** np.arange(c.size)
    out = c * (1.0 + signs) if parity == "even" else c * (1.0 - signs)
    return out / 2.0 if halve else out


def bounded_coefficients(coeffs: np.ndarray) -> np.ndarray:
    """Rescale by 1/(max|P| + 1e-12) when rounding pushed max|P| above 1
    on the certification grid."""
    peak = float(np.abs(C.chebval(certification_grid(), coeffs)).max())
    if peak > 1.0:
        logging.warning(f"polynomial peaks at {peak:.3e} > 1 on [-1, 1]; rescaling coefficients.")
        return np.asarray(coeffs) / (peak + 1e-12)
    return np.asarray(coeffs)


def _taylor_order(target: AnalyticTarget, r: float, nu: float, bound: float, eps: float) -> int:
    if target.is_polynomial():
        return max(int(sym.Poly(target.expr, X).degree()), 0)
    if r == 0.0:
        return 0
    # tail beyond order L at radius r is at most (r/(r+ν))^(L+1)·B
    return int(math.ceil(math.log(4.0 * bound / eps) / math.log((r + nu) / r)))


def _window(x: np.ndarray, lo: float, hi: float, steep: float) -> np.ndarray:
    w = np.ones_like(x)
    if lo > -1.0:
        w *= 0.5 * erfc(steep * (lo - x))
    if hi < 1.0:
        w *= 0.5 * erfc(steep * (x - hi))
    return w


def _interpolate(g, eps: float, start: int) -> np.ndarray:
    """Chebyshev interpolation of g by the type-II DCT, doubling the node
    count until the trailing coefficients are negligible."""
    n = start
    while True:
        y = g(chebyshev_nodes(n))
        c = dct(y, type=2) / n
        c[0] /= 2.0
        if np.abs(c[7 * n // 8 :]).sum() <= eps / 64.0:
            break
        if 2 * n > MAX_INTERP_NODES:
            raise CertificationError(f"interpolation did not converge with {n} nodes (eps={eps}).")
        logging.debug(f"refining Chebyshev interpolation to {2 * n} nodes.")
        n *= 2
    # chop the longest tail whose absolute sum stays below eps/8
    tail = np.cumsum(np.abs(c[::-1]))[::-1]
    keep = np.nonzero(tail > eps / 8.0)[0]
    deg = int(keep[-1]) if keep.size > 0 else 0
    return c[: deg + 1]


def bounded_taylor_approx(target: AnalyticTarget, r: float, nu: float, bound: float, eps: float) -> ApproxPolynomial:
    """Bounded polynomial approximation of a locally analytic function.

    The Taylor polynomial T of `target` at x0 (truncated where the tail at
    radius r drops below ε/4) is multiplied by a smooth window that equals 1
    within 1 - δ on [x0 - r, x0 + r] and falls below δ/2 outside
    [x0 - r - ν/2, x0 + r + ν/2], then interpolated on Chebyshev nodes.

    Args:
        target (AnalyticTarget): function with its expansion point x0.
        r (float): half-width of the approximation interval.
        nu (float): margin between the approximation interval and the decay region.
        bound (float): B with Σ_ℓ (r+ν)^ℓ |a_ℓ| ≤ B.
        eps (float): accuracy, in (0, 1/(2B)].

    Returns:
        ApproxPolynomial: a mixed-parity polynomial certified for
            |P - f| ≤ ε on [x0 - r, x0 + r],
            |P| ≤ ε + B on [-1, 1],
            |P| ≤ ε on [-1, 1] outside [x0 - r - ν/2, x0 + r + ν/2].
    """
    x0 = target.x0
    if not -1.0 <= x0 <= 1.0:
        raise ValueError(f"x0={x0} must lie in [-1, 1].")
    if not 0.0 <= r <= 2.0:
        raise ValueError(f"r={r} must lie in [0, 2].")
    if nu <= 0.0:
        raise ValueError(f"nu={nu} must be positive.")
    if bound <= 0.0 or not 0.0 < eps <= 1.0 / (2.0 * bound):
        raise ValueError(f"eps={eps} must lie in (0, 1/(2B)] with B={bound} > 0.")

    order = _taylor_order(target, r, nu, bound, eps)
    a = target.taylor_coefficients(order)
    radius_sum = float((np.abs(a) * (r + nu) ** np.arange(a.size)).sum())
    if radius_sum > bound * (1.0 + 1e-12):
        raise ValueError(f"Taylor coefficients give sum (r+nu)^l |a_l| = {radius_sum} > B={bound}.")

    lo, hi = x0 - r, x0 + r
    description = {**target.describe(), "r": r, "nu": nu, "B": bound, "eps": eps, "taylor_order": order}
    bounds = [
        Bound("approximation", max(lo, -1.0), min(hi, 1.0), eps, "error"),
        Bound("bounded", -1.0, 1.0, eps + bound, "magnitude"),
        Bound("decay", x0 - r - nu / 2.0, x0 + r + nu / 2.0, eps, "magnitude", outside=True),
    ]

    if target.is_polynomial() and lo <= -1.0 and hi >= 1.0:
        # plateau covers [-1, 1]: the Taylor polynomial itself
        shifted = P.Polynomial(a)(P.Polynomial([-x0, 1.0]))
        coeffs = C.poly2cheb(shifted.coef)
    else:
        delta = eps / (4.0 * max(bound, eps))
        steep = 4.0 / nu * float(erfcinv(delta))
        w_lo, w_hi = lo - nu / 4.0, hi + nu / 4.0

        def g(x: np.ndarray) -> np.ndarray:
            y = x - x0
            inside = np.abs(y) <= r + nu
            vals = P.polyval(np.where(inside, y, 0.0), a) * _window(x, w_lo, w_hi, steep)
            return np.where(inside, vals, 0.0)

        start = 1 << max(6, int(math.ceil(math.log2(4 * order + 8 * steep + 1))))
        coeffs = _interpolate(g, eps, min(start, MAX_INTERP_NODES))

    cert = certify(coeffs, bounds, target)
    if not cert.passed:
        raise CertificationError(f"bounded Taylor approximation of {target.name} failed: {cert.failures()}")
    return ApproxPolynomial(coeffs, None, description, cert)
