"""Blind estimation procedures for symbol length, oversampling and carrier count.

Four families share the peak detector below: the lag-domain argmax for the
useful length, the sliding CP correlation for the total length, the
candidate-length spectral traversal, and the substitution chain that recovers
the oversampling rate, carrier count and useful length from a decimated
recording.  A hint-routed hybrid switches families around -5 dB.
"""
from __future__ import annotations

import math
from bisect import bisect_left, insort
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .core import (
    CorrelationProfile,
    EstimationFailed,
    EstimationReport,
    IqBuffer,
    Method,
    PeakSet,
    ProgressionResult,
    TraversalParams,
)
from .spectral import lag_psd, segment_average, sliding_cp_profile, spectrum_magnitude
from .synth import decimate

# SNR hint at or above which the hybrid takes the classical correlation path.
HYBRID_SWITCH_DB = -5.0

# Progression membership tolerance: spectral leakage moves a peak by at most
# one bin at the lengths used here.
PROGRESSION_TOL = 1

# Lag-1 PSD line detection: a flat (non-oversampled) product spectrum tops out
# around 4x its median, genuine lattice lines sit far higher.
LAG_PSD_MIN_DOMINANCE = 10.0
# DC-hump guard and thinning radius as a fraction of the profile length;
# supports rates up to ~8 (first line at L/8 must survive the guard).
LAG_PSD_GUARD_FRACTION = 10

# Traversal qualification saturates at low SNR (nearly every candidate passes);
# below this qualify-rate the scan is treated as selective.
SELECTIVE_RATE_MAX = 0.5


@dataclass(frozen=True)
class PeakDetectParams:
    """Knobs for the shared peak detector."""

    min_prominence_ratio: float = 0.3  # threshold relative to the profile max
    min_separation: int = 2            # bins; 0 means derive from profile length
    exclude_dc: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.min_prominence_ratio < 1.0:
            raise ValueError("min_prominence_ratio must lie in (0, 1)")
        if self.min_separation < 0:
            raise ValueError("min_separation must be >= 0")


# Calibrated on noiseless synthesis; see detect_peaks for the semantics.
SPECTRUM_PEAKS = PeakDetectParams(0.3, 2, exclude_dc=True)     # Eq.5-style profiles
PSD_LINE_PEAKS = PeakDetectParams(0.5, 0, exclude_dc=False)    # lag-1 PSD lines
CP_PROFILE_PEAKS = PeakDetectParams(0.4, 0, exclude_dc=False)  # sliding CP profile


def detect_peaks(profile: CorrelationProfile, params: PeakDetectParams) -> PeakSet:
    """Interior local maxima above a fraction of the profile max, thinned.

    A plateau counts through its left edge (strict rise, flat-or-fall right).
    When DC is excluded, bin 0 neither qualifies nor sets the reference max.
    Thinning keeps the larger of any two peaks closer than min_separation.
    """
    v = profile.values
    n = v.size
    if n < 3:
        return PeakSet(np.empty(0, dtype=np.int64))
    cand = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])) + 1
    if params.exclude_dc:
        ref = float(v[1:].max())
    else:
        if v[0] >= v[1]:
            cand = np.concatenate([[0], cand])
        ref = float(v.max())
    cand = cand[v[cand] >= params.min_prominence_ratio * ref]
    if cand.size == 0 or params.min_separation <= 1:
        return PeakSet(np.sort(cand).astype(np.int64))
    order = cand[np.lexsort((cand, -v[cand]))]  # by value desc, ties to low bins
    kept: List[int] = []
    for i in order:
        i = int(i)
        pos = bisect_left(kept, i)
        if pos > 0 and i - kept[pos - 1] < params.min_separation:
            continue
        if pos < len(kept) and kept[pos] - i < params.min_separation:
            continue
        insort(kept, i)
    return PeakSet(np.asarray(kept, dtype=np.int64))


def progression_stats(peaks: PeakSet, tol: int = PROGRESSION_TOL) -> ProgressionResult:
    """Count and spacing of the best arithmetic progression in the peak set."""
    n_use, spacing = _kernels.progression_search(peaks.abscissas, tol)
    return ProgressionResult(n_use=n_use, n_all=peaks.count, spacing=spacing)


def estimate_nu_autocorr(
    signal: IqBuffer, search_max: int, window: Optional[int] = None
) -> int:
    """Useful symbol length as the lag maximizing the normalized autocorrelation.

    `window` (the guard L') defaults to half the buffer; ties break toward the
    smallest lag so repeated runs are bit-stable.
    """
    n = len(signal)
    if window is None:
        window = n // 2
    if not 1 <= search_max <= window or window >= n:
        raise ValueError("need 1 <= search_max <= window < len(signal)")
    obj = _kernels.autocorr_scan(signal.samples, n - window, search_max)
    return int(np.argmax(obj)) + 1


def _lattice_period(positions: np.ndarray) -> Optional[Tuple[float, int, float]]:
    """Fit spacing of near-equidistant positions; (period, n_used, rms residual).

    The median adjacent spacing assigns each position a lattice index; a
    least-squares slope through (index, position) then averages out the
    per-position jitter.  One trimming pass drops outliers (doubled detections,
    stray bumps).  Returns None when no stable fit exists.
    """
    pos = np.asarray(positions, dtype=np.float64)
    if pos.size < 2:
        return None
    if pos.size == 2:
        return float(pos[1] - pos[0]), 2, 0.0
    m = float(np.median(np.diff(pos)))
    if m <= 0:
        return None
    idx = np.round((pos - pos[0]) / m).astype(np.int64)
    keep: dict = {}
    for i, lattice in enumerate(idx):  # collisions keep the closer position
        ref = pos[0] + lattice * m
        if lattice not in keep or abs(pos[i] - ref) < abs(pos[keep[lattice]] - ref):
            keep[lattice] = i
    sel = sorted(keep.values())
    p, n_idx = pos[sel], idx[sel]
    slope = m
    for _ in range(2):
        c = n_idx - n_idx.mean()
        denom = float(np.dot(c, c))
        if denom == 0.0:
            return None
        slope = float(np.dot(c, p - p.mean()) / denom)
        resid = p - (p.mean() + slope * c)
        thr = max(3.0 * float(np.median(np.abs(resid))) + 1e-9, 0.05 * abs(slope))
        good = np.abs(resid) <= thr
        if good.sum() < 2:
            return None
        if good.all():
            break
        p, n_idx = p[good], n_idx[good]
    rms = float(np.sqrt(np.mean((p - (p.mean() + slope * (n_idx - n_idx.mean()))) ** 2)))
    return slope, int(p.size), rms


def _profile_period(
    profile: CorrelationProfile,
    n_u: int,
    window: int,
    detect: PeakDetectParams,
) -> Tuple[float, int]:
    """(spacing, points used) of the correlation-peak lattice of one profile.

    Smooths over roughly half the guard, drops apexes within one window of the
    profile ends (those are clipped), and validates the lattice fit: most
    detected apexes must survive trimming and sit within a few percent of the
    fitted spacing.  Raises EstimationFailed otherwise.
    """
    vals = profile.values
    w = 2 * (window // 4) + 1
    smoothed = np.convolve(vals, np.ones(w) / w, mode="same") if w > 1 else vals
    sep = detect.min_separation if detect.min_separation else max(2, (3 * n_u) // 4)
    peaks = detect_peaks(
        CorrelationProfile(smoothed, profile.abscissa_kind),
        PeakDetectParams(detect.min_prominence_ratio, sep, detect.exclude_dc),
    ).abscissas
    peaks = peaks[(peaks >= window) & (peaks <= vals.size - 1 - window)]
    n_detected = peaks.size
    if n_detected < 2:
        raise EstimationFailed("fewer than two usable correlation peaks")
    fit = _lattice_period(peaks)
    if fit is None:
        raise EstimationFailed("no stable peak spacing")
    period, n_used, rms = fit
    if period < 1:
        raise EstimationFailed("degenerate peak spacing")
    if n_detected > 2:
        if n_used < max(2, math.ceil(0.6 * n_detected)) or rms > max(1.5, 0.06 * period):
            raise EstimationFailed("peaks do not form a consistent symbol lattice")
    return period, n_used


def estimate_ns_from_profile(
    profile: CorrelationProfile,
    n_u: int,
    window: int,
    detect: PeakDetectParams = CP_PROFILE_PEAKS,
) -> int:
    """Total symbol length from the spacing of sliding-correlation peaks."""
    return int(round(_profile_period(profile, n_u, window, detect)[0]))


def estimate_ns_sliding(
    signal: IqBuffer,
    n_u: int,
    window: Optional[int] = None,
    detect: PeakDetectParams = CP_PROFILE_PEAKS,
) -> int:
    """Total symbol length via the sliding CP correlation at lag n_u.

    With an explicit `window` a single profile at that guard is used.  By
    default three guards around n_u/4 are fused (spacing estimates averaged,
    weighted by lattice size), which averages out apex jitter near 0 dB.
    """
    if window is not None:
        profile = sliding_cp_profile(signal, n_u, window)
        return estimate_ns_from_profile(profile, n_u, window, detect)
    base = max(8, n_u // 4)
    periods: List[float] = []
    weights: List[int] = []
    for wnd in sorted({max(8, (3 * base) // 4), base, max(8, (5 * base) // 4)}):
        try:
            profile = sliding_cp_profile(signal, n_u, wnd)
            period, n_used = _profile_period(profile, n_u, wnd, detect)
        except (EstimationFailed, ValueError):
            continue
        periods.append(period)
        weights.append(n_used)
    if not periods:
        raise EstimationFailed("no guard window produced a stable peak lattice")
    return int(round(np.average(periods, weights=weights)))


def _qualifies(
    signal: IqBuffer, n_p: int, params: TraversalParams, detect: PeakDetectParams
) -> bool:
    avg = segment_average(signal, n_p, params.n_o)
    peaks = detect_peaks(spectrum_magnitude(avg), detect)
    stats = progression_stats(peaks)
    if params.literal_peak_guard:
        if stats.n_all <= params.n_min:
            return False
    elif stats.n_all < params.min_peak_count:
        return False
    if stats.n_all == 0:
        return False
    return (
        stats.n_use / stats.n_all > params.majority_threshold
        and stats.spacing == params.n_o
    )


def _contiguous_runs(values: Sequence[int]) -> List[List[int]]:
    runs: List[List[int]] = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] != values[i - 1] + 1:
            runs.append(list(values[start:i]))
            start = i
    return runs


def estimate_ns_traversal_detail(
    signal: IqBuffer,
    params: TraversalParams,
    detect: PeakDetectParams = SPECTRUM_PEAKS,
) -> Tuple[int, Tuple[int, ...]]:
    """Traversal estimate plus the full set of qualifying candidates P_u.

    Candidates n_p in [n_min, n_max] qualify when the averaged-power spectrum
    shows a majority arithmetic progression at exactly the segment-count
    spacing.  In the selective regime (few qualifiers) the scan stops once a
    contiguous run of at least `min_run` ends and returns that run's mean; when
    qualification saturates (most candidates pass, the low-SNR regime) the mean
    of every qualifier is taken, which lands on the bracket midpoint.
    """
    p_u: List[int] = []
    n_scanned = 0
    for n_p in range(params.n_min, params.n_max + 1):
        if len(signal) < n_p * (params.n_o + 1):
            break
        n_scanned += 1
        if _qualifies(signal, n_p, params, detect):
            p_u.append(n_p)
        elif p_u:
            run = 1
            while run < len(p_u) and p_u[-run] - p_u[-run - 1] == 1:
                run += 1
            if run >= params.min_run and len(p_u) / n_scanned <= SELECTIVE_RATE_MAX:
                return round(float(np.mean(p_u[-run:]))), tuple(p_u)
    if not p_u:
        raise EstimationFailed("no candidate length qualified")
    if len(p_u) / max(n_scanned, 1) > SELECTIVE_RATE_MAX:
        return round(float(np.mean(p_u))), tuple(p_u)
    best = max(_contiguous_runs(p_u), key=len)
    return round(float(np.mean(best))), tuple(p_u)


def estimate_ns_traversal(
    signal: IqBuffer,
    params: TraversalParams,
    detect: PeakDetectParams = SPECTRUM_PEAKS,
) -> int:
    """Total symbol length via the candidate-length traversal."""
    return estimate_ns_traversal_detail(signal, params, detect)[0]


def estimate_oversampling(
    signal: IqBuffer, detect: PeakDetectParams = PSD_LINE_PEAKS
) -> int:
    """Oversampling rate from the line spacing of the lag-1 product spectrum.

    Lattice lines sit at multiples of L_M/q.  A guard zone around the DC hump
    hides the symbol-rate clutter, the threshold is taken relative to the
    strongest line outside it, and spacings are measured circularly (the
    wrap-around distance supplies the "full span" spacing that maps a
    line-free, already-baseband capture to q=1).
    """
    if len(signal) < 8:
        raise EstimationFailed("buffer too short for a product spectrum")
    p = lag_psd(signal, tau=1).values
    n = p.size
    med = float(np.median(p))
    if p.max() / max(med, 1e-300) < LAG_PSD_MIN_DOMINANCE:
        return 1
    guard = detect.min_separation if detect.min_separation else max(2, n // LAG_PSD_GUARD_FRACTION)
    body = p.copy()
    body[1:guard] = 0.0
    body[n - guard + 1:] = 0.0
    ref = float(body[1:].max())
    if ref <= 0.0:
        return 1
    thr = detect.min_prominence_ratio * ref
    cand = np.flatnonzero((body >= thr) & (p > np.roll(p, 1)) & (p >= np.roll(p, -1)))
    cand = cand[(cand > 0) & (cand < n - 1)]
    kept = [0]  # the DC line is always part of the lattice
    for i in cand[np.argsort(-p[cand])]:
        i = int(i)
        if all(abs(i - j) >= guard for j in kept):
            kept.append(i)
    kept.sort()
    spacings = np.diff(kept).tolist() + [n - kept[-1] + kept[0]]
    l_p = float(np.median(spacings))
    return max(1, int(round(n / l_p)))


def carrier_count_pow2(n_os: int) -> int:
    """Snap a total-length estimate to the carrier count, 2^floor(log2(n_os))."""
    if n_os < 1:
        raise ValueError("n_os must be positive")
    return 1 << (n_os.bit_length() - 1)


def estimate_carriers_substitution(
    signal: IqBuffer,
    params: TraversalParams,
    detect: PeakDetectParams = SPECTRUM_PEAKS,
) -> EstimationReport:
    """Oversampling -> decimation -> traversal -> power-of-two carrier count."""
    q_hat = estimate_oversampling(signal)
    baseband = decimate(signal, q_hat)
    n_os = estimate_ns_traversal(baseband, params, detect)
    n_cn = carrier_count_pow2(n_os)
    return EstimationReport(
        method_used=Method.SUBSTITUTION,
        n_s_hat=q_hat * n_os,
        n_u_hat=q_hat * n_cn,
        q_hat=q_hat,
        n_cn_hat=n_cn,
        n_os_hat=n_os,
    )


def estimate_hybrid(
    signal: IqBuffer,
    snr_hint_db: float,
    params: TraversalParams,
    detect: PeakDetectParams = SPECTRUM_PEAKS,
    search_max: Optional[int] = None,
    window: Optional[int] = None,
) -> EstimationReport:
    """Route by SNR hint: classical correlation at/above -5 dB, else substitution.

    The substitution chain supplies q and the carrier count on both routes; the
    high-SNR route replaces the length estimates with the lag-argmax useful
    length and the sliding-correlation total length.
    """
    if not math.isfinite(snr_hint_db):
        raise ValueError("snr_hint_db must be finite")
    sub: Optional[EstimationReport] = None
    try:
        sub = estimate_carriers_substitution(signal, params, detect)
    except EstimationFailed:
        sub = None

    if snr_hint_db < HYBRID_SWITCH_DB:
        if sub is None:
            raise EstimationFailed("substitution chain failed at low SNR")
        return EstimationReport(
            method_used=Method.HYBRID,
            n_s_hat=sub.n_s_hat,
            n_u_hat=sub.n_u_hat,
            q_hat=sub.q_hat,
            n_cn_hat=sub.n_cn_hat,
            n_os_hat=sub.n_os_hat,
        )

    n = len(signal)
    win = window if window is not None else n // 2
    if search_max is not None:
        k_max = search_max
    elif sub is not None and sub.n_u_hat is not None:
        k_max = int(round(2.5 * sub.n_u_hat))
    else:
        k_max = n // 6
    k_max = max(1, min(k_max, win - 1))
    n_u_hat: Optional[int] = None
    n_s_hat: Optional[int] = None
    try:
        n_u_hat = estimate_nu_autocorr(signal, k_max, win)
        n_s_hat = estimate_ns_sliding(signal, n_u_hat)
    except (EstimationFailed, ValueError):
        pass
    if n_u_hat is None and sub is None:
        raise EstimationFailed("both estimation routes failed")
    return EstimationReport(
        method_used=Method.HYBRID,
        n_s_hat=n_s_hat,
        n_u_hat=n_u_hat,
        q_hat=None if sub is None else sub.q_hat,
        n_cn_hat=None if sub is None else sub.n_cn_hat,
        n_os_hat=None if sub is None else sub.n_os_hat,
    )
