from __future__ import annotations

import pytest

from qdisttest.oracles.counter import QueryCost, QueryCounter, total_queries


def test_QueryCounter():
    c = QueryCounter("U_p")
    c.charge(forward=3, inverse=2, reflections=1)
    assert (c.forward, c.inverse, c.total, c.controlled_reflections) == (3, 2, 5, 1)
    c.reset()
    assert c.total == 0
    with pytest.raises(ValueError) as e:
        c.charge(forward=-1)
    assert "must be non-negative" in str(e.value)


def test_QueryCost_algebra():
    a, b = QueryCounter("a"), QueryCounter("b")
    cost = QueryCost.of(a) * 2 + QueryCost.of(b) + QueryCost.of(a)
    assert cost.calls == {a: 3, b: 1}
    assert cost.total == 4
    assert (cost * 0).total == 0
    assert QueryCost.of(a) * 3 == 3 * QueryCost.of(a)
    assert cost.with_reflections(5).reflections == 5


def test_QueryCost_charge():
    a, b = QueryCounter("a"), QueryCounter("b")
    cost = (QueryCost.of(a) * 2 + QueryCost.of(b)).with_reflections(1)
    charged = cost.charge(forward=4, inverse=4)
    assert charged == 24
    assert (a.forward, a.inverse, b.forward, b.inverse) == (8, 8, 4, 4)
    assert a.controlled_reflections == 8
    assert total_queries([a, b, a]) == 24


def test_QueryCost_invalid():
    with pytest.raises(ValueError) as e:
        QueryCost({QueryCounter(): -1})
    assert "must be non-negative" in str(e.value)
    with pytest.raises(ValueError) as e:
        QueryCost.of(QueryCounter()) * -1
    assert "must be non-negative" in str(e.value)
