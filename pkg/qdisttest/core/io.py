from __future__ import annotations

import json
import os

import numpy as np
import torch

from .states import ClassicalDistribution, DensityOperator


def to_dict(obj: ClassicalDistribution | DensityOperator) -> dict:
    if isinstance(obj, ClassicalDistribution):
        return {"type": "classical", "probs": obj.probs.tolist()}
    if isinstance(obj, DensityOperator):
        return {"type": "density", "re": obj.matrix.real.tolist(), "im": obj.matrix.imag.tolist()}
    raise ValueError(f"cannot serialize object of type {type(obj).__name__}.")


def from_dict(d: dict) -> ClassicalDistribution | DensityOperator:
    """Inverse of `to_dict`; raises ValueError when the payload violates
    the distribution invariants."""
    kind = d.get("type")
    if kind == "classical":
        return ClassicalDistribution(d["probs"])
    if kind == "density":
        re = np.asarray(d["re"], dtype=np.float64)
        im = np.asarray(d.get("im", np.zeros_like(re)), dtype=np.float64)
        if re.shape != im.shape:
            raise ValueError(f"re and im shapes differ: {re.shape} != {im.shape}.")
        return DensityOperator(torch.complex(torch.as_tensor(re), torch.as_tensor(im)))
    raise ValueError(f"type={kind} must be 'classical' or 'density'.")


def load_distribution(path: str | os.PathLike) -> ClassicalDistribution | DensityOperator:
    with open(path, encoding="utf-8") as f:
        return from_dict(json.load(f))


def dump_distribution(obj: ClassicalDistribution | DensityOperator, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_dict(obj), f)
