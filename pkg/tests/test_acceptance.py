"""Acceptance gate: every headline requirement, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s`.  The sweeps are seeded, so
results are bit-reproducible; trial counts follow the desk-scale protocol
(200 per SNR point).
"""
import time

import numpy as np
import pytest

from ofdmblind import (
    Method,
    SweepSpec,
    TraversalParams,
    estimate_carriers_substitution,
    generate_ofdm,
    run_sweep,
)
from ofdmblind.harness import format_csv
from conftest import make_config

MASTER_SEED = 1
TRIALS = 200


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def _rows_by(rows, method, parameter):
    return [r for r in rows if r.method is method and r.parameter == parameter]


def test_noiseless_grid_exactness():
    """Every config in the grid is recovered exactly from a noiseless capture."""
    t0 = time.perf_counter()
    failures = []
    for ncn in (64, 128, 256):
        for cp in (0.125, 0.25):
            for q in (1, 2, 4):
                cfg = make_config(
                    carrier_count=ncn, cp_ratio=cp, oversampling_rate=q, seed=3
                )
                signal, (n_u, _, n_s) = generate_ofdm(cfg)
                n_os = n_s // q
                params = TraversalParams(
                    n_min=round(0.75 * n_os), n_max=round(1.25 * n_os)
                )
                rep = estimate_carriers_substitution(signal, params)
                got = (rep.n_s_hat, rep.n_u_hat, rep.q_hat, rep.n_cn_hat)
                want = (n_s, n_u, q, ncn)
                if got != want:
                    failures.append((ncn, cp, q, got, want))
    elapsed = time.perf_counter() - t0
    _report(
        "noiseless-grid-exactness",
        not failures and elapsed < 120.0,
        f"18 configs, {elapsed:.1f}s, failures={failures}",
    )


def test_carrier_count_low_snr():
    """Carrier count from the substitution chain at -40..-10 dB, 4x capture."""
    spec = SweepSpec(
        base_config=make_config(oversampling_rate=4),
        snr_grid_db=(-40.0, -30.0, -20.0, -10.0),
        trials_per_point=TRIALS,
        methods=(Method.SUBSTITUTION,),
    )
    rows = _rows_by(run_sweep(spec, MASTER_SEED), Method.SUBSTITUTION, "n_cn")
    worst_acc = min(r.accuracy for r in rows)
    worst_ae = max(r.amplitude_error for r in rows)
    _report(
        "carrier-count-low-snr",
        worst_acc >= 0.95 and worst_ae <= 0.05,
        f"min accuracy {worst_acc:.3f} (>=0.95), max AE {worst_ae:.4f} (<=0.05) "
        f"over {[r.snr_db for r in rows]} dB x {TRIALS} trials",
    )


def test_traversal_total_length_low_snr():
    """Traversal total-length accuracy at -20/-15/-10 dB."""
    spec = SweepSpec(
        base_config=make_config(),
        snr_grid_db=(-20.0, -15.0, -10.0),
        trials_per_point=TRIALS,
        methods=(Method.TRAVERSAL,),
    )
    rows = _rows_by(run_sweep(spec, MASTER_SEED), Method.TRAVERSAL, "n_s")
    worst_acc = min(r.accuracy for r in rows)
    worst_ae = max(r.amplitude_error for r in rows)
    _report(
        "traversal-length-low-snr",
        worst_acc >= 0.60 and worst_ae <= 0.25,
        f"min accuracy {worst_acc:.3f} (>=0.60), max AE {worst_ae:.4f} (<=0.25)",
    )


def test_classical_methods_high_snr():
    """Lag argmax and sliding correlation at 0/+5/+10 dB."""
    spec = SweepSpec(
        base_config=make_config(),
        snr_grid_db=(0.0, 5.0, 10.0),
        trials_per_point=TRIALS,
        methods=(Method.AUTOCORR, Method.SLIDING),
    )
    rows = run_sweep(spec, MASTER_SEED)
    nu_rows = _rows_by(rows, Method.AUTOCORR, "n_u")
    ns_rows = _rows_by(rows, Method.SLIDING, "n_s")
    worst_acc = min(r.accuracy for r in nu_rows + ns_rows)
    worst_ae = max(r.amplitude_error for r in nu_rows + ns_rows)
    _report(
        "classical-high-snr",
        worst_acc >= 0.95 and worst_ae <= 0.02,
        f"min accuracy {worst_acc:.3f} (>=0.95), max AE {worst_ae:.4f} (<=0.02); "
        f"n_u: {[f'{r.accuracy:.3f}' for r in nu_rows]}, "
        f"n_s: {[f'{r.accuracy:.3f}' for r in ns_rows]}",
    )


def test_hybrid_crossover_consistency():
    """The hint-routed hybrid never trails the best individual method by >0.1."""
    spec = SweepSpec(
        base_config=make_config(),
        snr_grid_db=(-20.0, -10.0, 0.0, 10.0),
        trials_per_point=TRIALS,
        methods=(
            Method.AUTOCORR,
            Method.SLIDING,
            Method.TRAVERSAL,
            Method.SUBSTITUTION,
            Method.HYBRID,
        ),
    )
    rows = run_sweep(spec, MASTER_SEED)
    violations = []
    for snr in spec.snr_grid_db:
        for param in ("n_s", "n_u", "n_cn", "q"):
            cell = [
                r for r in rows if r.snr_db == snr and r.parameter == param
            ]
            hybrid = [r for r in cell if r.method is Method.HYBRID]
            others = [r for r in cell if r.method is not Method.HYBRID]
            if not hybrid or not others:
                continue
            best = max(r.accuracy for r in others)
            if hybrid[0].accuracy < best - 0.1:
                violations.append((snr, param, hybrid[0].accuracy, best))
    _report(
        "hybrid-crossover-consistency",
        not violations,
        f"checked {len(spec.snr_grid_db)} SNR points x 4 parameters; "
        f"violations={violations}",
    )


def test_property_suites_standalone():
    """Key invariants re-verified inline: oracle match, Parseval, invariances,
    CP equality, seed determinism."""
    from test_kernels import oracle_progression
    from ofdmblind import IqBuffer, estimate_ns_traversal, estimate_oversampling
    from ofdmblind._kernels import _reference

    checks = []

    # progression search equals the exhaustive oracle on sets of size <= 12
    rng = np.random.default_rng(0)
    ok = True
    for _ in range(300):
        peaks = np.unique(rng.integers(0, 400, size=rng.integers(0, 13)))
        ok &= _reference.progression_search(peaks, 1) == oracle_progression(list(peaks), 1)
    checks.append(("algorithm-vs-oracle", ok))

    # Parseval to 1e-9 relative up to length 4096
    ok = True
    for n in (64, 960, 4096):
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        mag = np.abs(np.fft.fft(y))
        ok &= abs(np.sum(mag**2) / n - np.sum(np.abs(y) ** 2)) <= 1e-9 * np.sum(np.abs(y) ** 2)
    checks.append(("parseval", ok))

    # scale and translation invariances
    cfg = make_config(oversampling_rate=4, seed=2)
    signal, _ = generate_ofdm(cfg)
    scaled = IqBuffer(signal.samples * (3.5 - 0.2j), signal.sample_rate_hz)
    params = TraversalParams(120, 200)
    ok = estimate_oversampling(scaled) == estimate_oversampling(signal)
    base = make_config(seed=2)
    sig1, _ = generate_ofdm(base)
    sc1 = IqBuffer(sig1.samples * 1e-3j, sig1.sample_rate_hz)
    ok &= estimate_ns_traversal(sc1, params) == estimate_ns_traversal(sig1, params)
    peaks = np.array([10, 16, 22, 28, 34], dtype=np.int64)
    ok &= _reference.progression_search(peaks) == _reference.progression_search(peaks + 777)
    checks.append(("invariances", ok))

    # cyclic prefix equality on synthesized symbols
    ok = True
    for q in (1, 4):
        sig, (n_u, n_g, n_s) = generate_ofdm(make_config(oversampling_rate=q, seed=9))
        for j in range(20):
            blk = sig.samples[j * n_s : (j + 1) * n_s]
            ok &= bool(np.array_equal(blk[:n_g], blk[n_u:]))
    checks.append(("cp-equality", ok))

    # bitwise CSV determinism
    spec = SweepSpec(
        base_config=make_config(),
        snr_grid_db=(0.0,),
        trials_per_point=2,
        methods=(Method.AUTOCORR,),
    )
    a = format_csv(run_sweep(spec, 5)).encode()
    b = format_csv(run_sweep(spec, 5)).encode()
    checks.append(("seed-determinism", a == b))

    bad = [name for name, ok in checks if not ok]
    _report("property-suites", not bad, f"checks={[name for name, _ in checks]}, failed={bad}")
