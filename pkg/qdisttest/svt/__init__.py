from .transform import TransformedMap, apply_contraction, apply_svt, apply_to_state  # noqa: F401

__all__ = ["TransformedMap", "apply_contraction", "apply_svt", "apply_to_state"]
