from .base import CLOSE, FAR, MATRIX_MAX_N, QueryTrace, TesterVerdict, TraceStage  # noqa: F401
from .binning import acceptance_table, bin_amplitudes, magnitude_bin, soft_selection  # noqa: F401
from .entropy import entropy_classical, entropy_quantum, exact_entropy_estimate  # noqa: F401
from .identities import ensure_identities  # noqa: F401
from .l2 import combined_exact, l2_classical_robust  # noqa: F401
from .quantum import l2_quantum, l3_closeness, swap_test_probability  # noqa: F401
from .reductions import independence, l1_closeness  # noqa: F401
from .schedule import BinSchedule, EntropySchedule  # noqa: F401

# tester functions resolvable by name
TESTERS = [
    "entropy_classical",
    "entropy_quantum",
    "l2_classical_robust",
    "l2_quantum",
    "l3_closeness",
    "l1_closeness",
    "independence",
]

__all__ = [
    "FAR",
    "CLOSE",
    "MATRIX_MAX_N",
    "TESTERS",
    "QueryTrace",
    "TraceStage",
    "TesterVerdict",
    "EntropySchedule",
    "BinSchedule",
    "acceptance_table",
    "bin_amplitudes",
    "magnitude_bin",
    "soft_selection",
    "ensure_identities",
    "entropy_classical",
    "entropy_quantum",
    "exact_entropy_estimate",
    "l2_classical_robust",
    "combined_exact",
    "l2_quantum",
    "l3_closeness",
    "swap_test_probability",
    "l1_closeness",
    "independence",
]
