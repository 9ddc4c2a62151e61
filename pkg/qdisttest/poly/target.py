from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
import sympy as sym

X = sym.Symbol("x", real=True)


class AnalyticTarget:
    """Function to approximate, with its Taylor series at `x0`.

    The function is given as a sympy expression in `X`. Coefficients come
    from `coefficient_fn` when a closed form is known, otherwise from the
    sympy expansion.
    """

    def __init__(
        self,
        expr: sym.Expr,
        x0: float,
        name: str,
        params: dict | None = None,
        coefficient_fn: Callable[[int], float] | None = None,
        domain: tuple[float, float] | None = None,
    ):
        """
        Args:
            expr (sympy.Expr): the function of `X`.
            x0 (float): the expansion point.
            name (str): short name used in certificates and JSON dumps.
            params (dict | None, optional): parameters recorded with the target. Defaults to `None`.
            coefficient_fn (Callable[[int], float] | None, optional): closed form of the ℓ-th Taylor coefficient. Defaults to `None`.
            domain (tuple[float, float] | None, optional): open interval where `expr` is defined; the target is NaN outside. Defaults to `None`.
        """  # noqa: E501
        self.expr = sym.sympify(expr)
        self.x0 = float(x0)
        self.name = name
        self.params = dict(params or {})
        self._coefficient_fn = coefficient_fn
        self.domain = domain
        self._func = sym.lambdify(X, self.expr, "numpy")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if self.domain is None:
            inside = np.ones(x.shape, dtype=bool)
        else:
            inside = (x > self.domain[0]) & (x < self.domain[1])
        out = np.full(x.shape, np.nan)
        out[inside] = np.broadcast_to(np.asarray(self._func(x[inside]), dtype=np.float64), x[inside].shape)
        return out

    def taylor_coefficients(self, order: int) -> np.ndarray:
        """a_0, ..., a_order of f(x0 + y) = Σ a_ℓ y^ℓ."""
        if self._coefficient_fn is not None:
            return np.array([self._coefficient_fn(ell) for ell in range(order + 1)], dtype=np.float64)
        y = sym.Symbol("y", real=True)
        g = sym.expand(self.expr.subs(X, self.x0 + y))
        out = np.zeros(order + 1)
        if g.is_polynomial(y):
            coeffs = sym.Poly(g, y).all_coeffs()[::-1]
            for ell, c in enumerate(coeffs[: order + 1]):
                out[ell] = float(c)
            return out
        term = g
        for ell in range(order + 1):
            out[ell] = float(term.subs(y, 0)) / math.factorial(ell)
            term = sym.diff(term, y)
        return out

    def is_polynomial(self) -> bool:
        return bool(self.expr.is_polynomial(X))

    def describe(self) -> dict:
        return {"name": self.name, "expr": str(self.expr), "x0": self.x0, **self.params}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name}, x0={self.x0}, params={self.params})"


def log_target(beta: float) -> AnalyticTarget:
    """ln(1/x)/(2 ln(2/β)) expanded at 1."""
    scale = 2.0 * math.log(2.0 / beta)
    return AnalyticTarget(
        sym.log(1 / X) / scale,
        1.0,
        "log",
        {"beta": beta},
        coefficient_fn=lambda ell: 0.0 if ell == 0 else (-1.0) ** ell / (ell * scale),
        domain=(0.0, math.inf),
    )


def inverse_target(t: float) -> AnalyticTarget:
    """1/(2tx) expanded at 1."""
    return AnalyticTarget(
        1 / (2 * t * X),
        1.0,
        "inverse",
        {"t": t},
        coefficient_fn=lambda ell: (-1.0) ** ell / (2 * t),
        domain=(0.0, math.inf),
    )


def constant_target(c: float = 1.0, x0: float = 0.0) -> AnalyticTarget:
    return AnalyticTarget(sym.Float(c), x0, "constant", {"c": c}, coefficient_fn=lambda ell: c if ell == 0 else 0.0)


def identity_target(x0: float = 0.0) -> AnalyticTarget:
    return AnalyticTarget(X, x0, "identity")
