from .circuit import circuit_distribution, ensure_validated, validation_distance  # noqa: F401
from .overlap import (  # noqa: F401
    OverlapEstimate,
    StatePreparation,
    estimate_overlap_magnitude,
    flag_probability,
    overlap_estimate,
    overlap_iterations,
)
from .sample import (  # noqa: F401
    AE_SUCCESS,
    MODES,
    AmplitudeEstimate,
    acceptance_probability,
    ae_boosted,
    ae_distribution,
    ae_error_bound,
    ae_iterations,
    ae_sample,
    boost_repetitions,
    estimate_amplitude,
)

__all__ = [
    "AE_SUCCESS",
    "MODES",
    "AmplitudeEstimate",
    "acceptance_probability",
    "ae_boosted",
    "ae_distribution",
    "ae_error_bound",
    "ae_iterations",
    "ae_sample",
    "boost_repetitions",
    "estimate_amplitude",
    "circuit_distribution",
    "ensure_validated",
    "validation_distance",
    "OverlapEstimate",
    "StatePreparation",
    "estimate_overlap_magnitude",
    "flag_probability",
    "overlap_estimate",
    "overlap_iterations",
]
