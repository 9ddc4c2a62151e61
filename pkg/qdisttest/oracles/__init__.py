from .counter import QueryCost, QueryCounter, total_queries  # noqa: F401
from .derived import correlation_gap, mixture_oracle, product_oracle  # noqa: F401
from .oracle import (  # noqa: F401
    PurifiedOracle,
    from_discrete_query,
    from_pure_state_oracle,
    purify_classical,
    purify_density,
)

__all__ = [
    "QueryCounter",
    "QueryCost",
    "total_queries",
    "PurifiedOracle",
    "purify_classical",
    "purify_density",
    "from_discrete_query",
    "from_pure_state_oracle",
    "mixture_oracle",
    "product_oracle",
    "correlation_gap",
]
