from .base import BlockEncoding, ProjectedUnitaryEncoding, RegisterLayout  # noqa: F401
from .block import block_encode_density, gram_square, half_difference  # noqa: F401
from .sqrt import classical_sqrt_encoding, density_sqrt_encoding  # noqa: F401

__all__ = [
    "RegisterLayout",
    "ProjectedUnitaryEncoding",
    "BlockEncoding",
    "classical_sqrt_encoding",
    "density_sqrt_encoding",
    "block_encode_density",
    "half_difference",
    "gram_square",
]
