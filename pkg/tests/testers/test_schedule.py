from __future__ import annotations

import math

import pytest

from qdisttest.testers.schedule import MIN_RATIO, BinSchedule, EntropySchedule

param_EntropySchedule = [
    (0.25, 16, 1),
    (0.1, 8, 1),
    (0.25, 4, 4),
    (0.5, 32, 1),
]


@pytest.mark.parametrize("eps, n, m", param_EntropySchedule)
def test_EntropySchedule(eps: float, n: int, m: int):
    s = EntropySchedule(eps, n, m)
    assert s.delta == pytest.approx(eps / (4 * n * math.log(n * m / eps)))
    assert s.beta == pytest.approx(math.sqrt(s.delta / m))
    assert s.eta == pytest.approx(eps / (24 * math.log(2 / s.beta)))
    assert s.M == math.ceil(math.pi / s.tau)
    assert s.scale == pytest.approx(4 * math.log(2 / s.beta))
    assert s.offset == pytest.approx(math.log(m))
    assert s.to_dict()["M"] == s.M


def test_EntropySchedule_invalid():
    with pytest.raises(ValueError) as e:
        EntropySchedule(0.25, 8)
    assert f"must be at least {MIN_RATIO:g}" in str(e.value)
    with pytest.raises(ValueError) as e:
        EntropySchedule(1.0, 64)
    assert "eps=1.0 must lie in (0, 1)" in str(e.value)
    with pytest.raises(ValueError) as e:
        EntropySchedule(0.1, 0)
    assert "must be positive" in str(e.value)


def test_BinSchedule():
    s = BinSchedule(0.5, 0.5)
    assert s.theta == pytest.approx(0.5 * 0.25 / 6)
    assert s.k_max == 6
    assert s.bins == list(range(-1, 7))
    assert s.size == 8
    assert s.far_threshold == pytest.approx(0.25 - 3 * s.theta)
    assert s.bin_repetitions % 2 == 1
    assert s.ae_fail == pytest.approx(1 / 24)
    for k in s.bins:
        # threshold midway between 2^{-k-2} and 2^{-k-1}
        assert 2.0 ** (-k - 2) < s.bin_threshold(k) < 2.0 ** (-k - 1)
        assert s.t(k) ** 2 == pytest.approx(2.0 ** (k + 2))
        assert s.tau(k) ** 2 == pytest.approx(2.0 ** (k - 3))
        assert s.weight(k) * s.precision(k) == pytest.approx(8 * s.theta / s.size)
        assert 0.0 < s.eta_P(k) <= 0.5


def test_BinSchedule_invalid():
    with pytest.raises(ValueError) as e:
        BinSchedule(0.5, 1.0)
    assert "nu=1.0 must lie in (0, 1)" in str(e.value)
    with pytest.raises(ValueError) as e:
        BinSchedule(0.0, 0.5)
    assert "eps=0.0 must lie in (0, 1)" in str(e.value)
