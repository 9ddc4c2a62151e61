from .functional import (  # noqa: F401
    marginals,
    partial_trace,
    product_distribution,
    schatten_distance,
    shannon_entropy,
    trace_product,
    von_neumann_entropy,
)
from .generate import generate  # noqa: F401
from .io import dump_distribution, from_dict, load_distribution, to_dict  # noqa: F401
from .linalg import Operator  # noqa: F401
from .states import ClassicalDistribution, DensityOperator, PureState  # noqa: F401

__all__ = [
    "ClassicalDistribution",
    "DensityOperator",
    "PureState",
    "Operator",
    "shannon_entropy",
    "von_neumann_entropy",
    "schatten_distance",
    "partial_trace",
    "trace_product",
    "marginals",
    "product_distribution",
    "generate",
    "load_distribution",
    "dump_distribution",
    "to_dict",
    "from_dict",
]
