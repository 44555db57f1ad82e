"""Shared domain types: generation config, IQ buffers, profiles, peak sets and reports.

All types are immutable value objects; they validate on construction and can be
shared freely across worker processes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np


class ConfigError(ValueError):
    """Raised when a generation or sweep configuration violates an invariant."""


class EstimationFailed(RuntimeError):
    """Raised when an estimator cannot produce a value (too few peaks, empty P_u...).

    This is a *result*, not a crash: callers that score trials convert it into a
    miss, and the CLI reports it as a null estimate with exit code 0.
    """


class Method(str, enum.Enum):
    """Estimation procedures exposed by the library and the sweep harness."""

    AUTOCORR = "autocorr"          # lag-domain argmax for the useful length
    SLIDING = "sliding"            # sliding CP correlation for the total length
    TRAVERSAL = "traversal"        # candidate-length spectral traversal
    SUBSTITUTION = "substitution"  # oversampling + decimated traversal + pow2 snap
    HYBRID = "hybrid"              # SNR-hint routed combination

    def __str__(self) -> str:  # so f"{method}" gives the bare name
        return self.value


@dataclass(frozen=True)
class OfdmConfig:
    """Ground-truth generation parameters for one synthesized recording."""

    carrier_count: int            # subcarriers per symbol, N_cn
    cp_ratio: float               # guard fraction of the useful part, N_g/N_u
    oversampling_rate: int = 1    # receiver samples per baseband sample, q
    symbol_count: int = 20        # OFDM symbols per recording, N_O
    carrier_freq_hz: float = 0.0  # complex carrier shift f_c (0 keeps baseband)
    sample_rate_hz: float = 40e6
    snr_db: float = math.inf      # AWGN level; +inf means noiseless
    seed: int = 0

    def __post_init__(self) -> None:
        if self.carrier_count < 2:
            raise ConfigError("carrier_count must be >= 2")
        if not 0.0 < self.cp_ratio < 1.0:
            raise ConfigError("cp_ratio must lie in (0, 1)")
        guard = self.cp_ratio * self.carrier_count
        if abs(guard - round(guard)) > 1e-9 or round(guard) < 1:
            raise ConfigError(
                f"cp_ratio * carrier_count = {guard!r} must be a positive integer"
            )
        if self.oversampling_rate < 1:
            raise ConfigError("oversampling_rate must be >= 1")
        if self.symbol_count < 1:
            raise ConfigError("symbol_count must be >= 1")
        if self.sample_rate_hz <= 0:
            raise ConfigError("sample_rate_hz must be positive")
        if self.carrier_freq_hz < 0:
            raise ConfigError("carrier_freq_hz must be >= 0")
        if self.carrier_freq_hz >= self.sample_rate_hz / 2:
            raise ConfigError("carrier_freq_hz must stay below sample_rate_hz / 2")
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")

    @property
    def noiseless(self) -> bool:
        return math.isinf(self.snr_db) and self.snr_db > 0


def derive_lengths(cfg: OfdmConfig) -> Tuple[int, int, int]:
    """Return (n_u, n_g, n_s) in receiver samples.

    n_u counts the useful part after oversampling (q * N_cn), n_g the cyclic
    prefix and n_s their sum; all are exact integers by the config invariant.
    """
    q = cfg.oversampling_rate
    n_u = q * cfg.carrier_count
    n_g = round(cfg.cp_ratio * cfg.carrier_count) * q
    return n_u, n_g, n_u + n_g


class AbscissaKind(str, enum.Enum):
    LAG = "lag"
    POSITION = "position"
    FREQUENCY_BIN = "frequency_bin"


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class IqBuffer:
    """A finite complex-baseband recording plus its sample rate."""

    samples: np.ndarray
    sample_rate_hz: float = 1.0

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite (no NaN/Inf)")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", _as_readonly(arr))

    def __len__(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class CorrelationProfile:
    """A real-valued curve over lag, position or frequency bin."""

    values: np.ndarray
    abscissa_kind: AbscissaKind = AbscissaKind.LAG

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("profile values must be finite")
        object.__setattr__(self, "values", _as_readonly(arr))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class PeakSet:
    """Strictly increasing bin indices of detected peaks."""

    abscissas: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.abscissas, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("abscissas must be 1-D")
        if arr.size and (arr[0] < 0 or np.any(np.diff(arr) <= 0)):
            raise ValueError("abscissas must be non-negative and strictly increasing")
        object.__setattr__(self, "abscissas", _as_readonly(arr))

    @property
    def count(self) -> int:
        return int(self.abscissas.size)

    def __len__(self) -> int:
        return self.count


@dataclass(frozen=True)
class ProgressionResult:
    """Best arithmetic-progression statistics over a peak set."""

    n_use: int   # peaks on the best progression
    n_all: int   # total detected peaks
    spacing: int  # common difference in bins (L_p); 0 when n_use < 2

    def __post_init__(self) -> None:
        if self.n_use > self.n_all:
            raise ValueError("n_use cannot exceed n_all")
        if (self.spacing == 0) != (self.n_use < 2):
            raise ValueError("spacing must be 0 exactly when n_use < 2")


@dataclass(frozen=True)
class TraversalParams:
    """Search bracket and acceptance knobs for the candidate-length traversal."""

    n_min: int
    n_max: int
    n_o: int = 6                    # symbols per averaged segment
    majority_threshold: float = 0.5  # required n_use/n_all
    min_peak_count: int = 4          # replaces the printed "N_all > N_min" guard
    literal_peak_guard: bool = False  # use the printed guard (rejects everything at desk scale)
    min_run: int = 3                 # shortest ended run that may stop the scan early

    def __post_init__(self) -> None:
        if not 1 <= self.n_min < self.n_max:
            raise ConfigError("need 1 <= n_min < n_max")
        if self.n_o < 2:
            raise ConfigError("n_o must be >= 2")
        if not 0.0 < self.majority_threshold <= 1.0:
            raise ConfigError("majority_threshold must lie in (0, 1]")


@dataclass(frozen=True)
class EstimationReport:
    """Estimates produced by one method; missing values mean the stage failed."""

    method_used: Method
    n_s_hat: Optional[int] = None    # total symbol length, receiver samples
    n_u_hat: Optional[int] = None    # useful symbol length, receiver samples
    q_hat: Optional[int] = None      # oversampling rate
    n_cn_hat: Optional[int] = None   # carrier count (power of two)
    n_os_hat: Optional[int] = None   # total symbol length after decimation

    def __post_init__(self) -> None:
        for name in ("n_s_hat", "n_u_hat", "q_hat", "n_cn_hat", "n_os_hat"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be a positive integer when present")
        if self.n_cn_hat is not None and self.n_cn_hat & (self.n_cn_hat - 1):
            raise ValueError("n_cn_hat must be an exact power of two")
        if (
            self.method_used is Method.SUBSTITUTION
            and self.q_hat is not None
            and self.n_cn_hat is not None
            and self.n_u_hat != self.q_hat * self.n_cn_hat
        ):
            raise ValueError("substitution reports must satisfy n_u = q * n_cn")

    @property
    def failed(self) -> bool:
        return all(
            getattr(self, f) is None
            for f in ("n_s_hat", "n_u_hat", "q_hat", "n_cn_hat", "n_os_hat")
        )
