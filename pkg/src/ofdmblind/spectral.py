"""Correlation and spectral kernels shared by the estimators.

All operations are pure and keep the paper-facing normalizations: correlation
objectives are scaled by the mean window energy so values live in [0, 1], and
transforms are plain full-length DFTs of the raw (rectangular) sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .core import AbscissaKind, CorrelationProfile, IqBuffer


@dataclass(frozen=True)
class SegmentAverage:
    """Lag products averaged over segments shifted by the candidate length."""

    values: np.ndarray  # complex, length n_o * n_p
    n_p: int            # candidate symbol length (segment hop)
    n_ch: int           # number of averaged segments

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.values, dtype=np.complex128)
        if arr.size != len(self.values) or arr.ndim != 1 or arr.size == 0:
            raise ValueError("values must be a non-empty 1-D sequence")
        if self.n_ch < 1 or self.n_p < 1 or arr.size % self.n_p:
            raise ValueError("length must be a positive multiple of n_p with n_ch >= 1")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


def normalized_autocorr_objective(signal: IqBuffer, k: int, window: int) -> float:
    """Energy-normalized lag-k autocorrelation magnitude over L_M - window terms.

    Equals 1.0 at k=0 (self-correlation); peaks near the CP copy lag where it
    approaches n_g/n_s.  `window` is the guard L' that bounds the usable lag.
    """
    x = signal.samples
    n_terms = len(x) - window
    if window < 1 or n_terms < 1:
        raise ValueError("window must satisfy 1 <= window < len(signal)")
    if k < 0 or k > window:
        raise ValueError(f"lag {k} outside [0, {window}]")
    if k == 0:
        return 1.0
    return float(_kernels.autocorr_scan(x, n_terms, k)[k - 1])


def autocorr_objective_scan(signal: IqBuffer, k_max: int, window: int) -> CorrelationProfile:
    """The objective of `normalized_autocorr_objective` for every lag 1..k_max."""
    x = signal.samples
    n_terms = len(x) - window
    if window < 1 or n_terms < 1 or k_max < 1 or k_max > window:
        raise ValueError("need 1 <= k_max <= window < len(signal)")
    return CorrelationProfile(
        _kernels.autocorr_scan(x, n_terms, k_max), AbscissaKind.LAG
    )


def sliding_cp_profile(signal: IqBuffer, n_u: int, window: int) -> CorrelationProfile:
    """Windowed lag-n_u correlation versus start position.

    profile[k-1] = |sum_{i=1..window} r(i+k) conj(r(i+k+n_u))| normalized by the
    mean energy of the two windows, for k = 1 .. L_M - n_u - window.
    """
    x = signal.samples
    if n_u < 1 or window < 1:
        raise ValueError("n_u and window must be positive")
    n_pos = len(x) - n_u - window
    if n_pos < 1:
        raise ValueError("buffer too short for this lag and window")
    prod = x[: len(x) - n_u] * np.conj(x[n_u:])
    energy = np.abs(x) ** 2
    cp = np.concatenate([[0.0 + 0.0j], np.cumsum(prod)])
    ce = np.concatenate([[0.0], np.cumsum(energy)])
    k = np.arange(1, n_pos + 1)
    num = np.abs(cp[k + window] - cp[k])
    den = 0.5 * ((ce[k + window] - ce[k]) + (ce[k + n_u + window] - ce[k + n_u]))
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(den > 0, num / den, 0.0)
    return CorrelationProfile(vals, AbscissaKind.POSITION)


def segment_average(
    signal: IqBuffer,
    n_p: int,
    n_o: int,
    n_ch: Optional[int] = None,
    lag: int = 0,
) -> SegmentAverage:
    """Average lag products over n_ch segments of n_o*n_p samples, hop n_p.

    values[i] = mean_m r(m*n_p + i) conj(r(m*n_p + i + lag)).  By default every
    segment the buffer can hold is used.  lag=0 (averaged instantaneous power)
    is what the traversal consumes; a CP-lag product is available through lag.
    """
    x = signal.samples
    if n_p < 1 or n_o < 1 or lag < 0:
        raise ValueError("n_p, n_o must be positive and lag non-negative")
    n = n_o * n_p
    max_ch = (len(x) - n - lag) // n_p
    if n_ch is None:
        n_ch = max_ch
    if n_ch < 1 or n_ch > max_ch:
        raise ValueError(
            f"buffer holds {max(max_ch, 0)} segments of {n} samples (requested {n_ch})"
        )
    starts = np.arange(n_ch) * n_p
    idx = starts[:, None] + np.arange(n)[None, :]
    segs = x[idx]
    lagged = segs if lag == 0 else x[idx + lag]
    vals = (segs * np.conj(lagged)).mean(axis=0)
    return SegmentAverage(vals, n_p=n_p, n_ch=int(n_ch))


def spectrum_magnitude(avg: SegmentAverage) -> CorrelationProfile:
    """Magnitude of the full-length DFT of the segment average."""
    return CorrelationProfile(np.abs(np.fft.fft(avg.values)), AbscissaKind.FREQUENCY_BIN)


def lag_psd(signal: IqBuffer, tau: int = 1) -> CorrelationProfile:
    """Magnitude spectrum of the lag-tau product sequence, zero-padded to L_M."""
    x = signal.samples
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if len(x) < tau + 2:
        raise ValueError("buffer too short for this lag")
    z = x[: len(x) - tau] * np.conj(x[tau:]) if tau else np.abs(x) ** 2
    return CorrelationProfile(
        np.abs(np.fft.fft(z, n=len(x))), AbscissaKind.FREQUENCY_BIN
    )
