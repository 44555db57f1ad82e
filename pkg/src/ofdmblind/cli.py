"""Command-line surface: synthesize recordings, estimate blind, run sweeps.

Exit codes: 0 on success (a failed estimate is still a result), 2 for usage,
config or IO errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

from .core import (
    ConfigError,
    EstimationFailed,
    EstimationReport,
    IqBuffer,
    Method,
    OfdmConfig,
    TraversalParams,
)
from .estimators import (
    estimate_carriers_substitution,
    estimate_hybrid,
    estimate_ns_sliding,
    estimate_ns_traversal,
    estimate_nu_autocorr,
)
from .harness import Method as _Method  # noqa: F401  (re-exported for specs)
from .harness import SweepSpec, run_sweep, summarize, write_csv
from .iqio import MalformedIqError, config_from_json, read_iq, write_iq
from .synth import generate_ofdm

CONFIG_VERSION = 1

_CONFIG_KEYS = {
    "carrier_count",
    "cp_ratio",
    "oversampling_rate",
    "symbol_count",
    "carrier_freq_hz",
    "sample_rate_hz",
    "snr_db",
    "seed",
}
_SWEEP_KEYS = {
    "base_config",
    "snr_grid_db",
    "trials_per_point",
    "methods",
    "exact_match_tolerance",
}


class CliError(Exception):
    """User-facing error; message printed to stderr, exit code 2."""


def _load_json(path: Path) -> dict:
    if not path.exists():
        raise CliError(f"config not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"top-level JSON object expected in {path}")
    return data


def _check_keys(data: dict, allowed: set, where: str) -> None:
    unknown = set(data) - allowed - {"version"}
    if unknown:
        raise CliError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")
    if data.get("version") != CONFIG_VERSION:
        raise CliError(f"{where} must declare \"version\": {CONFIG_VERSION}")


def load_config(path: Path) -> OfdmConfig:
    data = _load_json(path)
    _check_keys(data, _CONFIG_KEYS, str(path))
    body = {k: v for k, v in data.items() if k != "version"}
    try:
        return config_from_json(body)
    except (ConfigError, TypeError) as exc:
        raise CliError(f"invalid config {path}: {exc}") from exc


def load_sweep_spec(path: Path) -> SweepSpec:
    data = _load_json(path)
    _check_keys(data, _SWEEP_KEYS, str(path))
    base = data.get("base_config")
    if not isinstance(base, dict):
        raise CliError(f"{path}: base_config object is required")
    unknown = set(base) - (_CONFIG_KEYS - {"snr_db", "seed"})
    if unknown:
        raise CliError(f"{path}: base_config keys not allowed: {', '.join(sorted(unknown))}")
    try:
        cfg = config_from_json(base)
        methods = tuple(Method(m) for m in data.get("methods", [m.value for m in Method]))
        return SweepSpec(
            base_config=cfg,
            snr_grid_db=tuple(float(s) for s in data["snr_grid_db"]),
            trials_per_point=int(data.get("trials_per_point", 200)),
            methods=methods,
            exact_match_tolerance=int(data.get("exact_match_tolerance", 0)),
        )
    except KeyError as exc:
        raise CliError(f"{path}: missing required key {exc}") from exc
    except (ConfigError, ValueError, TypeError) as exc:
        raise CliError(f"invalid sweep spec {path}: {exc}") from exc


def _report_json(
    report: EstimationReport, sample_rate_hz: Optional[float], failed: bool
) -> str:
    body = {
        "failed": failed,
        "method_used": str(report.method_used),
        "n_s_hat": report.n_s_hat,
        "n_u_hat": report.n_u_hat,
        "q_hat": report.q_hat,
        "n_cn_hat": report.n_cn_hat,
        "n_os_hat": report.n_os_hat,
        "symbol_rate_hz": None,
        "useful_symbol_time_s": None,
    }
    if sample_rate_hz and report.n_s_hat:
        body["symbol_rate_hz"] = sample_rate_hz / report.n_s_hat
    if sample_rate_hz and report.n_u_hat:
        body["useful_symbol_time_s"] = report.n_u_hat / sample_rate_hz
    return json.dumps(body, indent=2, sort_keys=True)


def cmd_synth(args) -> int:
    cfg = load_config(Path(args.config))
    signal, _ = generate_ofdm(cfg)
    try:
        write_iq(Path(args.out), signal, truth=cfg)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {len(signal)} samples to {args.out}")
    return 0


def cmd_estimate(args) -> int:
    try:
        signal, _meta = read_iq(Path(args.in_path))
    except (MalformedIqError, FileNotFoundError, OSError) as exc:
        raise CliError(str(exc)) from exc

    params = TraversalParams(n_min=args.n_min, n_max=args.n_max)
    window = args.window if args.window else len(signal) // 2
    search_max = args.search_max if args.search_max else max(1, min(len(signal) // 6, window - 1))

    failed = False
    try:
        if args.method == "auto":
            report = estimate_hybrid(
                signal,
                args.snr_hint,
                params,
                search_max=args.search_max,
                window=args.window,
            )
        elif args.method == "autocorr":
            n_u = estimate_nu_autocorr(signal, search_max, window)
            report = EstimationReport(method_used=Method.AUTOCORR, n_u_hat=n_u)
        elif args.method == "sliding":
            n_u = estimate_nu_autocorr(signal, search_max, window)
            n_s = estimate_ns_sliding(signal, n_u)
            report = EstimationReport(method_used=Method.SLIDING, n_s_hat=n_s, n_u_hat=n_u)
        elif args.method == "traversal":
            n_s = estimate_ns_traversal(signal, params)
            report = EstimationReport(method_used=Method.TRAVERSAL, n_s_hat=n_s)
        else:
            report = estimate_carriers_substitution(signal, params)
    except EstimationFailed:
        failed = True
        report = EstimationReport(method_used=Method(args.method if args.method != "auto" else "hybrid"))
    except ValueError as exc:
        raise CliError(f"estimation rejected the input: {exc}") from exc

    print(_report_json(report, signal.sample_rate_hz, failed or report.failed))
    return 0


def cmd_sweep(args) -> int:
    spec = load_sweep_spec(Path(args.spec))
    rows = run_sweep(spec, master_seed=args.seed, workers=args.workers)
    try:
        write_csv(rows, Path(args.out))
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}") from exc
    for line in summarize(rows):
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ofdmblind",
        description="Synthesize OFDM recordings and blindly estimate their parameters.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("synth", help="synthesize a recording from a JSON config")
    ps.add_argument("--config", required=True, help="JSON generation config")
    ps.add_argument("--out", required=True, help="output IQ path (sidecar written next to it)")
    ps.set_defaults(func=cmd_synth)

    pe = sub.add_parser("estimate", help="estimate parameters from an IQ recording")
    pe.add_argument("--in", dest="in_path", required=True, help="input IQ path")
    pe.add_argument(
        "--method",
        choices=["auto", "autocorr", "sliding", "traversal", "substitution"],
        default="auto",
    )
    pe.add_argument("--snr-hint", type=float, default=10.0,
                    help="SNR hint in dB routing the auto method (default 10)")
    pe.add_argument("--seed", type=int, default=0, help="accepted for interface parity")
    pe.add_argument("--n-min", type=int, default=120, help="traversal bracket lower edge")
    pe.add_argument("--n-max", type=int, default=200, help="traversal bracket upper edge")
    pe.add_argument("--search-max", type=int, default=None, help="lag-scan upper bound")
    pe.add_argument("--window", type=int, default=None, help="correlation guard L'")
    pe.set_defaults(func=cmd_estimate)

    pw = sub.add_parser("sweep", help="run a Monte-Carlo sweep from a JSON spec")
    pw.add_argument("--spec", required=True, help="JSON sweep spec")
    pw.add_argument("--out", required=True, help="output CSV path")
    pw.add_argument("--seed", type=int, default=0, help="master seed")
    pw.add_argument("--workers", type=int, default=None, help="parallel SNR points")
    pw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
