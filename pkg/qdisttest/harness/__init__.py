from .config import ExperimentConfig, apply_overrides, load_config  # noqa: F401
from .keys import KEYS, ResultKeys  # noqa: F401
from .run import run, scaling_sweep  # noqa: F401

__all__ = ["ExperimentConfig", "load_config", "apply_overrides", "ResultKeys", "KEYS", "run", "scaling_sweep"]
