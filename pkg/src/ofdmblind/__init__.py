"""Blind OFDM parameter estimation over AWGN: synthesis, estimators, sweeps."""

from ._kernels import BACKEND
from .core import (
    AbscissaKind,
    ConfigError,
    CorrelationProfile,
    EstimationFailed,
    EstimationReport,
    IqBuffer,
    Method,
    OfdmConfig,
    PeakSet,
    ProgressionResult,
    TraversalParams,
    derive_lengths,
)
from .estimators import (
    HYBRID_SWITCH_DB,
    PeakDetectParams,
    carrier_count_pow2,
    detect_peaks,
    estimate_carriers_substitution,
    estimate_hybrid,
    estimate_ns_sliding,
    estimate_ns_traversal,
    estimate_ns_traversal_detail,
    estimate_nu_autocorr,
    estimate_oversampling,
    progression_stats,
)
from .harness import SweepRow, SweepSpec, run_sweep, score_trial, write_csv
from .iqio import read_iq, write_iq
from .spectral import (
    SegmentAverage,
    autocorr_objective_scan,
    lag_psd,
    normalized_autocorr_objective,
    segment_average,
    sliding_cp_profile,
    spectrum_magnitude,
)
from .synth import (
    DegenerateSignalError,
    add_awgn,
    decimate,
    generate_ofdm,
    oversample,
    qam16_symbols,
)

__version__ = "0.1.0"

__all__ = [
    "AbscissaKind",
    "BACKEND",
    "ConfigError",
    "CorrelationProfile",
    "DegenerateSignalError",
    "EstimationFailed",
    "EstimationReport",
    "HYBRID_SWITCH_DB",
    "IqBuffer",
    "Method",
    "OfdmConfig",
    "PeakDetectParams",
    "PeakSet",
    "ProgressionResult",
    "SegmentAverage",
    "SweepRow",
    "SweepSpec",
    "TraversalParams",
    "add_awgn",
    "autocorr_objective_scan",
    "carrier_count_pow2",
    "decimate",
    "derive_lengths",
    "detect_peaks",
    "estimate_carriers_substitution",
    "estimate_hybrid",
    "estimate_ns_sliding",
    "estimate_ns_traversal",
    "estimate_ns_traversal_detail",
    "estimate_nu_autocorr",
    "estimate_oversampling",
    "generate_ofdm",
    "lag_psd",
    "normalized_autocorr_objective",
    "oversample",
    "progression_stats",
    "qam16_symbols",
    "read_iq",
    "run_sweep",
    "score_trial",
    "segment_average",
    "sliding_cp_profile",
    "spectrum_magnitude",
    "write_csv",
    "write_iq",
]
