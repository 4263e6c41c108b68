"""Readout of binary lossy optical memory cells by photon counting.

A bit is stored in one of two channel transmissivities; a transmitter
(classical Poisson mode or signal/idler pairs with perfectly correlated
photon numbers) probes the cell, counts are recorded, and a maximum
likelihood decision recovers the bit.  The library computes exact and
approximate error probabilities for that pipeline, the classical
benchmarks it is measured against, and the resulting per-cell information
gain, plus a Monte Carlo emulation of the frame-by-frame experiment.
"""

__version__ = "0.1.0"

from .bounds import (
    GainRecord,
    binary_entropy,
    classical_optimal_bound,
    classical_phc_bound,
    classical_phc_threshold,
    gain,
    med_boundary,
)
from .channel_model import apply_noise, apply_noise_joint, effective_transmissivity
from .decision import (
    DecisionRule,
    GaussianSurrogate,
    Outcome,
    RuleKind,
    decide,
    decide_batch,
    error_probability_gaussian_approx,
    exact_error_probability,
    exact_error_probability_with_bound,
    gaussian_surrogate,
    posterior,
    quantum_signal_threshold,
)
from .dist_core import (
    DEFAULT_TRUNC_TOL,
    JointPmf,
    PhotonPmf,
    binomial_thin,
    joint_from_pair_marginal,
    multithermal_pmf,
    poisson_pmf,
    signal_joint,
    thermal_pmf,
    tmsv_joint_pmf,
)
from .errors import (
    ConvergenceError,
    InvalidParameterError,
    OverflowGuardError,
    QReadError,
    RegimeViolationError,
    TruncationFailure,
)
from .params import (
    CellPair,
    DetectionModel,
    NoiseKind,
    SourceKind,
    SourceSpec,
)
from .simulate import (
    ErrorEstimate,
    FrameBatch,
    dump_frames_csv,
    estimate_error,
    gain_with_uncertainty,
    sample_frames,
)
from .sweep import (
    CSV_HEADER,
    SweepConfig,
    config_from_dict,
    emit_results,
    evaluate_point,
    load_config,
    read_records_csv,
    run_sweep,
)
