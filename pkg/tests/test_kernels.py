"""Backend parity and the exhaustive progression oracle."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofdmblind._kernels import _reference, available_backends


def oracle_progression(peaks, tol=1):
    """Literal brute-force restatement of the progression search.

    Same pair domain (first half of the list, 1-based k_i < n/2,
    k_j < n/2 + 2), same spacing guard (> 3), membership by scanning the peak
    list for any value within +-tol.  Kept deliberately dumb and loop-based so
    it shares no code with the kernels it checks.
    """
    peaks = list(peaks)
    n = len(peaks)
    if n < 2:
        return 0, 0
    k_max = peaks[-1]

    def member(v):
        return any(abs(v - p) <= tol for p in peaks)

    best_count, best_spacing = 0, 0
    ki = 1
    while ki < n / 2:
        kj = ki + 1
        while kj < n / 2 + 2 and kj <= n:
            step = peaks[kj - 1] - peaks[ki - 1]
            if step > 3:
                count = 2
                cur = peaks[kj - 1]
                while cur < k_max:
                    cur += step
                    if member(cur):
                        count += 1
                if count > best_count:
                    best_count, best_spacing = count, step
            kj += 1
        ki += 1
    return best_count, best_spacing


peak_sets = st.lists(st.integers(0, 600), min_size=0, max_size=12, unique=True).map(sorted)


class TestProgressionSearch:
    @given(peak_sets)
    @settings(max_examples=400, deadline=None)
    def test_matches_exhaustive_oracle(self, peaks):
        arr = np.asarray(peaks, dtype=np.int64)
        for _, backend in available_backends().items():
            assert backend.progression_search(arr, 1) == oracle_progression(peaks, 1)

    @given(peak_sets, st.integers(0, 5000))
    @settings(max_examples=200, deadline=None)
    def test_translation_invariant(self, peaks, offset):
        arr = np.asarray(peaks, dtype=np.int64)
        shifted = arr + offset
        assert _reference.progression_search(arr) == _reference.progression_search(shifted)

    def test_backends_agree_on_large_sets(self):
        backends = available_backends()
        rng = np.random.default_rng(42)
        for _ in range(25):
            peaks = np.unique(rng.integers(0, 2000, size=rng.integers(2, 180)))
            results = {
                name: b.progression_search(peaks, 1) for name, b in backends.items()
            }
            assert len(set(results.values())) == 1, results


class TestAutocorrScan:
    def direct(self, x, n_terms, k_max):
        out = np.empty(k_max)
        for k in range(1, k_max + 1):
            num = abs(np.sum(x[:n_terms] * np.conj(x[k : k + n_terms])))
            den = 0.5 * (
                np.sum(np.abs(x[:n_terms]) ** 2)
                + np.sum(np.abs(x[k : k + n_terms]) ** 2)
            )
            out[k - 1] = num / den
        return out

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=30, deadline=None)
    def test_matches_direct_formula(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(200) + 1j * rng.standard_normal(200)
        expected = self.direct(x, 120, 60)
        for _, backend in available_backends().items():
            np.testing.assert_allclose(
                backend.autocorr_scan(x, 120, 60), expected, rtol=1e-10
            )

    def test_rejects_bad_bounds(self):
        x = np.ones(16, dtype=complex)
        with pytest.raises(ValueError):
            _reference.autocorr_scan(x, 10, 8)


def test_compiled_backend_is_present():
    # the build ships the extension; fall back only when explicitly forced
    import ofdmblind

    backends = available_backends()
    assert "python" in backends
    if ofdmblind.BACKEND == "compiled":
        assert "compiled" in backends
