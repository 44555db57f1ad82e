"""Received-signal synthesis: 16-QAM OFDM, cyclic prefix, oversampling, AWGN.

The receive chain mirrors a non-cooperative capture of a band-limited channel:
the baseband symbol stream (and, for oversampled configs, the channel noise)
passes through the same zero-insertion + windowed-sinc interpolation, so both
carry the sample-lattice cyclostationarity the estimators exploit.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from .core import IqBuffer, OfdmConfig, derive_lengths

# Interpolation lowpass: Hamming-windowed sinc, cutoff pi/q, length scaled with
# the rate so the relative transition bandwidth stays fixed.  Short on purpose:
# the residual passband ripple is what makes the lag-1 spectral lines of an
# oversampled capture stand clear of the correlation noise floor at any SNR.
INTERP_TAPS_PER_RATE = 4

# 16-QAM, Gray-coded axes, unit average power.
_QAM16_AXIS = np.array([-3.0, -1.0, 1.0, 3.0]) / math.sqrt(10.0)
_GRAY2 = np.array([0, 1, 3, 2])  # 2-bit Gray sequence -> axis level index


class DegenerateSignalError(ValueError):
    """Raised when noise is requested against an all-zero signal."""


def qam16_symbols(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform Gray-mapped 16-QAM symbols with unit average power."""
    nibbles = rng.integers(0, 16, size=shape)
    i_level = _GRAY2[nibbles >> 2]
    q_level = _GRAY2[nibbles & 3]
    return _QAM16_AXIS[i_level] + 1j * _QAM16_AXIS[q_level]


def design_interp_filter(q: int, taps: Optional[int] = None) -> np.ndarray:
    """Interpolation lowpass for rate q, normalized to preserve average power."""
    if q < 1:
        raise ValueError("q must be >= 1")
    n_taps = taps if taps is not None else INTERP_TAPS_PER_RATE * q
    m = np.arange(n_taps) - (n_taps - 1) / 2.0
    h = np.sinc(m / q) * np.hamming(n_taps)
    return h * math.sqrt(q / np.sum(h * h))


def _interpolate(x: np.ndarray, q: int, h: np.ndarray) -> np.ndarray:
    z = np.zeros(x.size * q, dtype=np.complex128)
    z[::q] = x
    return np.convolve(z, h, mode="same")


def generate_ofdm(cfg: OfdmConfig) -> Tuple[IqBuffer, Tuple[int, int, int]]:
    """Synthesize one received recording; returns the buffer and (n_u, n_g, n_s).

    Per symbol: IDFT across the subcarriers, interpolation by q, then the last
    n_g samples prefixed as the cyclic prefix.  The optional carrier shift is a
    complex-exponential multiply.  AWGN enters at the baseband rate and runs
    through the same interpolation filter, scaled so the measured noise power
    hits the configured SNR against the noiseless signal exactly.
    """
    n_u, n_g, n_s = derive_lengths(cfg)
    q = cfg.oversampling_rate
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    symbols = qam16_symbols(rng, (cfg.symbol_count, cfg.carrier_count))
    h = design_interp_filter(q) if q > 1 else None

    blocks = []
    for j in range(cfg.symbol_count):
        u = np.fft.ifft(symbols[j]) * math.sqrt(cfg.carrier_count)
        if q > 1:
            u = _interpolate(u, q, h)
        blocks.append(np.concatenate([u[-n_g:], u]))
    x = np.concatenate(blocks)

    if cfg.carrier_freq_hz > 0.0:
        ramp = 2.0 * math.pi * cfg.carrier_freq_hz / cfg.sample_rate_hz
        x = x * np.exp(1j * ramp * np.arange(x.size))

    if not cfg.noiseless:
        p_sig = float(np.mean(np.abs(x) ** 2))
        if p_sig <= 0.0:
            raise DegenerateSignalError("noiseless signal has zero power")
        n_bb = x.size // q
        w = (rng.standard_normal(n_bb) + 1j * rng.standard_normal(n_bb)) / math.sqrt(2.0)
        if q > 1:
            w = _interpolate(w, q, h)
        p_w = float(np.mean(np.abs(w) ** 2))
        target = p_sig / 10.0 ** (cfg.snr_db / 10.0)
        x = x + w * math.sqrt(target / p_w)

    return IqBuffer(x, cfg.sample_rate_hz), (n_u, n_g, n_s)


def add_awgn(signal: IqBuffer, snr_db: float, seed: int = 0) -> IqBuffer:
    """Add circularly-symmetric white Gaussian noise at the given SNR.

    Per-sample noise variance is signal_power / 10^(snr_db/10); an all-zero
    input is rejected rather than silently returning pure noise.
    """
    x = signal.samples
    p_sig = float(np.mean(np.abs(x) ** 2))
    if p_sig <= 0.0:
        raise DegenerateSignalError("cannot set an SNR against a zero-power signal")
    if math.isinf(snr_db) and snr_db > 0:
        return signal
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    var = p_sig / 10.0 ** (snr_db / 10.0)
    w = (rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size)) * math.sqrt(var / 2.0)
    return IqBuffer(x + w, signal.sample_rate_hz)


def oversample(signal: IqBuffer, q: int) -> IqBuffer:
    """Zero-insert by q and lowpass-interpolate; q=1 is the identity."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return signal
    y = _interpolate(signal.samples, q, design_interp_filter(q))
    return IqBuffer(y, signal.sample_rate_hz * q)


def decimate(signal: IqBuffer, q: int) -> IqBuffer:
    """Keep every q-th sample of the longest prefix q divides; q=1 is identity."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return signal
    n = (len(signal) // q) * q
    if n == 0:
        raise ValueError("buffer shorter than one decimation stride")
    return IqBuffer(signal.samples[:n:q], signal.sample_rate_hz / q)
