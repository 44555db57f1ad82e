"""Pure-numpy fallbacks for the hot kernels.

Same contracts as the compiled module `_fast`; selected at import time when the
extension is unavailable or OFDMBLIND_PURE_PYTHON is set.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np


def progression_search(peaks: np.ndarray, tol: int = 1) -> Tuple[int, int]:
    """Best arithmetic-progression (count, spacing) seeded by early peak pairs.

    Pairs are drawn from the first half of the sorted peak list (1-based
    k_i < n/2, k_j < n/2 + 2), pair spacing must exceed 3 bins, and the
    progression is extended from the second element in steps of the spacing,
    counting peaks that match within +-tol bins.
    """
    peaks = np.asarray(peaks, dtype=np.int64)
    n = peaks.size
    if n < 2:
        return 0, 0
    k_max = int(peaks[-1])
    member = np.zeros(k_max + tol + 2, dtype=bool)
    for d in range(-tol, tol + 1):
        idx = peaks + d
        idx = idx[(idx >= 0) & (idx <= k_max + tol)]
        member[idx] = True

    i_hi = (n - 1) // 2 - 1          # 0-based inclusive; empty when n < 4
    j_hi = min((n + 1) // 2, n - 1)  # 0-based inclusive
    n_use, spacing = 0, 0
    for i in range(i_hi + 1):
        for j in range(i + 1, j_hi + 1):
            step = int(peaks[j] - peaks[i])
            if step <= 3:
                continue
            start = int(peaks[j])
            n_steps = -(-(k_max - start) // step)
            n_cur = 2
            if n_steps > 0:
                vals = start + step * np.arange(1, n_steps + 1)
                vals = vals[vals < member.size]
                n_cur += int(member[vals].sum())
            if n_cur > n_use:
                n_use, spacing = n_cur, step
    return n_use, spacing


def autocorr_scan(r: np.ndarray, n_terms: int, k_max: int) -> np.ndarray:
    """Normalized autocorrelation objective for lags 1..k_max.

    obj[k-1] = |sum_{i<n_terms} r[i] conj(r[i+k])|
               / (0.5 * (sum |r[i]|^2 + sum |r[i+k]|^2)).
    Requires k_max + n_terms <= len(r).
    """
    r = np.ascontiguousarray(r, dtype=np.complex128)
    if n_terms < 1 or k_max < 1 or k_max + n_terms > r.size:
        raise ValueError("need 1 <= k_max and k_max + n_terms <= len(r)")
    energy = np.abs(r) ** 2
    cum = np.concatenate([[0.0], np.cumsum(energy)])
    head = cum[n_terms]
    a = r[:n_terms]
    obj = np.empty(k_max, dtype=np.float64)
    for k in range(1, k_max + 1):
        num = np.abs(np.vdot(a, r[k:k + n_terms]))
        den = 0.5 * (head + cum[k + n_terms] - cum[k])
        obj[k - 1] = num / den if den > 0 else 0.0
    return obj
