"""Symbolic identities the testers rely on, checked with sympy before
use."""

from __future__ import annotations

from functools import lru_cache

import sympy as sym

from qdisttest.utils.errors import InvariantError

p, q, n, k, L = sym.symbols("p q n k L", positive=True)


def telescoping_residual() -> sym.Expr:
    """2^{9-k}·((p+q)/2)·(2^{-k-2}/(p+q))·((p-q)/2^{-k+3})² - (p-q)²."""
    term = 2 ** (9 - k) * ((p + q) / 2) * (2 ** (-k - 2) / (p + q)) * ((p - q) / 2 ** (-k + 3)) ** 2
    return sym.simplify(sym.powsimp(term - (p - q) ** 2, force=True))


def staging_residual() -> sym.Expr:
    """Realized flag amplitude of one x in bin k, with exact polynomials,
    against 2^{-3} times the displayed per-bin quantity.

    The mixture amplitude √a is multiplied by 1/(2 t_k √a) and by
    (τ_k² p - τ_k² q)/2 with t_k = 2^{(k+2)/2} and τ_k = 2^{(k-3)/2}.
    """
    a = (p + q) / 2
    t = 2 ** ((k + 2) / sym.Integer(2))
    tau = 2 ** ((k - 3) / sym.Integer(2))
    realized = (sym.sqrt(a) / (2 * t * sym.sqrt(a)) * (tau**2 * p - tau**2 * q) / 2) ** 2
    displayed = a * (2 ** (-k - 2) / (p + q)) * ((p - q) / 2 ** (-k + 3)) ** 2
    return sym.simplify(sym.powsimp(realized - displayed / 8, force=True))


def quantum_offset_residual() -> sym.Expr:
    """p·S(√(p/n))·4L - ln n·p - p ln(1/p) with S(x) = ln(1/x)/(2L): the
    transformed overlap of the density encoding exceeds the classical one
    by p ln n per eigenvalue."""
    s = sym.log(1 / sym.sqrt(p / n)) / (2 * L)
    return sym.simplify(sym.expand_log(p * s * 4 * L - p * sym.log(n) - p * sym.log(1 / p), force=True))


@lru_cache(maxsize=None)
def ensure_identities() -> None:
    for name, residual in (
        ("telescoping", telescoping_residual),
        ("staging", staging_residual),
        ("quantum offset", quantum_offset_residual),
    ):
        value = residual()
        if value != 0:
            raise InvariantError(f"{name} identity does not hold: residual {value}.")
