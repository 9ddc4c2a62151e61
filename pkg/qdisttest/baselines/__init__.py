from .sampling import BASELINES, SampleBudget, collision_l2, plugin_entropy  # noqa: F401

__all__ = ["BASELINES", "SampleBudget", "plugin_entropy", "collision_l2"]
