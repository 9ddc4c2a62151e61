from __future__ import annotations

import numpy as np
import pytest
import torch

from qdisttest.core.generate import generate
from qdisttest.core.io import dump_distribution, from_dict, load_distribution, to_dict


def test_dump_load(tmp_path):
    rho = generate("haar-random-density", n=3, seed=5)
    path = tmp_path / "rho.json"
    dump_distribution(rho, path)
    assert torch.allclose(load_distribution(path).matrix, rho.matrix, atol=1e-15)

    p = generate("zipf", n=5)
    dump_distribution(p, path)
    assert np.array_equal(load_distribution(path).probs, p.probs)


param_from_dict_invalid = [
    ({"type": "classical", "probs": [0.5, 0.6]}, "must sum to 1"),
    ({"type": "density", "re": [[1.0, 0.0], [0.0, 0.0]], "im": [[0.0]]}, "shapes differ"),
    ({"type": "mixed"}, "must be 'classical' or 'density'"),
]


@pytest.mark.parametrize("d, msg", param_from_dict_invalid)
def test_from_dict_invalid(d: dict, msg: str):
    with pytest.raises(ValueError) as e:
        from_dict(d)
    assert msg in str(e.value)


def test_to_dict_invalid():
    with pytest.raises(ValueError) as e:
        to_dict([0.5, 0.5])
    assert "cannot serialize" in str(e.value)
