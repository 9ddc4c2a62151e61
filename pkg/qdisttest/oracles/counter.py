from __future__ import annotations

import threading
from collections.abc import Iterable


class QueryCounter:
    """Tally of forward and inverse oracle applications plus the controlled
    reflections interleaved with them.

    Counts only grow; `reset` is the only way back to zero.
    """

    def __init__(self, name: str = "U"):
        """
        Args:
            name (str, optional): label used in traces. Defaults to `"U"`.
        """
        self.name = name
        self._forward = 0
        self._inverse = 0
        self._reflections = 0
        self._lock = threading.Lock()

    @property
    def forward(self) -> int:
        return self._forward

    @property
    def inverse(self) -> int:
        return self._inverse

    @property
    def controlled_reflections(self) -> int:
        return self._reflections

    @property
    def total(self) -> int:
        return self._forward + self._inverse

    def charge(self, forward: int = 0, inverse: int = 0, reflections: int = 0) -> None:
        if forward < 0 or inverse < 0 or reflections < 0:
            raise ValueError("query charges must be non-negative.")
        with self._lock:
            self._forward += forward
            self._inverse += inverse
            self._reflections += reflections

    def reset(self) -> None:
        with self._lock:
            self._forward = self._inverse = self._reflections = 0

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(name={self.name}, forward={self._forward}, "
            f"inverse={self._inverse}, controlled_reflections={self._reflections})"
        )


class QueryCost:
    """Number of calls to each counter made by one use of a circuit, plus
    its controlled reflections.

    Costs add under composition and scale by integers, so the cost of a
    derived object is exact bookkeeping over the costs of its parts.
    """

    def __init__(self, calls: dict[QueryCounter, int] | None = None, reflections: int = 0):
        self._calls: dict[QueryCounter, int] = {c: k for c, k in (calls or {}).items() if k != 0}
        if any(k < 0 for k in self._calls.values()) or reflections < 0:
            raise ValueError("query costs must be non-negative.")
        self._reflections = reflections

    @classmethod
    def of(cls, counter: QueryCounter) -> QueryCost:
        return cls({counter: 1})

    @property
    def calls(self) -> dict[QueryCounter, int]:
        return dict(self._calls)

    @property
    def counters(self) -> list[QueryCounter]:
        return list(self._calls)

    @property
    def total(self) -> int:
        return sum(self._calls.values())

    @property
    def reflections(self) -> int:
        return self._reflections

    def __add__(self, other: QueryCost) -> QueryCost:
        calls = dict(self._calls)
        for c, k in other._calls.items():
            calls[c] = calls.get(c, 0) + k
        return QueryCost(calls, self._reflections + other._reflections)

    def __mul__(self, times: int) -> QueryCost:
        if times < 0:
            raise ValueError(f"times={times} must be non-negative.")
        return QueryCost({c: k * times for c, k in self._calls.items()}, self._reflections * times)

    __rmul__ = __mul__

    def with_reflections(self, reflections: int) -> QueryCost:
        return QueryCost(self._calls, self._reflections + reflections)

    def charge(self, forward: int = 1, inverse: int = 0) -> int:
        """Charge `forward` uses and `inverse` inverse-uses to every counter.

        Reflections are recorded on every participating counter.

        Returns:
            int: number of oracle calls charged in total.
        """
        uses = forward + inverse
        for c, k in self._calls.items():
            c.charge(forward=forward * k, inverse=inverse * k, reflections=uses * self._reflections)
        return uses * self.total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QueryCost):
            return NotImplemented
        return self._calls == other._calls and self._reflections == other._reflections

    def __hash__(self) -> int:
        return hash((frozenset(self._calls.items()), self._reflections))

    def __repr__(self) -> str:
        inner = ", ".join(f"{c.name}: {k}" for c, k in self._calls.items())
        return f"{self.__class__.__name__}({{{inner}}}, reflections={self._reflections})"


def total_queries(counters: Iterable[QueryCounter]) -> int:
    """forward + inverse summed over distinct counters."""
    return sum(c.total for c in set(counters))
