from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from qdisttest.ampest.sample import MODES
from qdisttest.oracles.counter import QueryCounter, total_queries
from qdisttest.oracles.oracle import PurifiedOracle
from qdisttest.utils.errors import InvariantError

# largest system dimension simulated with full matrices
MATRIX_MAX_N = 8

FAR = "far"
CLOSE = "close"


@dataclass
class TraceStage:
    name: str
    queries: int
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "queries": self.queries, **self.details}


class QueryTrace:
    """Per-stage query breakdown of one tester run, checked against the
    oracle counters it charged."""

    def __init__(self, oracles: list[PurifiedOracle]):
        counters: list[QueryCounter] = []
        for o in oracles:
            counters += [c for c in o.counters if c not in counters]
        self._counters = counters
        self._start = total_queries(counters)
        self.stages: list[TraceStage] = []

    def record(self, name: str, queries: int, **details) -> None:
        self.stages.append(TraceStage(name, int(queries), details))

    @property
    def total(self) -> int:
        return sum(s.queries for s in self.stages)

    def charged(self) -> int:
        return total_queries(self._counters) - self._start

    def check(self) -> int:
        """Counter delta, which must equal the sum over stages."""
        charged = self.charged()
        if charged != self.total:
            raise InvariantError(f"counters were charged {charged} queries but the trace records {self.total}.")
        return charged


class TesterVerdict:
    """Decision or estimate of one tester run with its query trace."""

    def __init__(
        self,
        tester: str,
        trace: QueryTrace,
        seed: int | None,
        decision: str | None = None,
        estimate: float | None = None,
        exact: float | None = None,
        params: dict | None = None,
    ):
        """
        Args:
            tester (str): name of the tester function.
            trace (QueryTrace): per-stage queries.
            seed (int | None): seed of the run.
            decision (str | None, optional): `"far"` or `"close"` for testers. Defaults to `None`.
            estimate (float | None, optional): numeric output of estimators, or the statistic a decision was taken on. Defaults to `None`.
            exact (float | None, optional): the same statistic with amplitude estimation replaced by exact amplitudes. Defaults to `None`.
            params (dict | None, optional): schedule parameters of the run. Defaults to `None`.
        """  # noqa: E501
        self.tester = tester
        self.queries = trace.check()
        self.trace = trace.stages
        self.seed = seed
        self.decision = decision
        self.estimate = estimate
        self.exact = exact
        self.params = dict(params or {})

    @property
    def is_far(self) -> bool:
        return self.decision == FAR

    def to_dict(self) -> dict:
        return {
            "tester": self.tester,
            "decision": self.decision,
            "estimate": self.estimate,
            "exact": self.exact,
            "queries": self.queries,
            "seed": self.seed,
            "params": self.params,
            "trace": [s.to_dict() for s in self.trace],
        }

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(tester={self.tester}, decision={self.decision}, "
            f"estimate={self.estimate}, queries={self.queries})"
        )


def check_mode(mode: str, *oracles: PurifiedOracle) -> None:
    if mode not in MODES:
        raise ValueError(f"mode={mode} must be one of {MODES}.")
    if mode == "matrix":
        for o in oracles:
            if o.n > MATRIX_MAX_N:
                raise ValueError(f"matrix mode supports n <= {MATRIX_MAX_N}, got n={o.n}.")


def check_same_n(o1: PurifiedOracle, o2: PurifiedOracle) -> None:
    if o1.n != o2.n:
        raise ValueError(f"dimension mismatch: {o1.n} != {o2.n}.")


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def log_schedule(tester: str, params: dict) -> None:
    logging.info(f"{tester}: " + ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in params.items()))
