"""Raw IQ file IO: interleaved little-endian float32 plus a JSON sidecar.

The sample format is the lowest common denominator SDR tools read directly;
the sample rate and optional generation truth live in `<basename>.meta.json`,
never inside the sample stream.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .core import IqBuffer, OfdmConfig

FORMAT_TAG = "ofdmblind-iq-v1"


class MalformedIqError(ValueError):
    """Raised when an IQ file or its sidecar cannot be interpreted."""


def sidecar_path(iq_path) -> Path:
    return Path(iq_path).with_suffix(".meta.json")


def _config_to_json(cfg: OfdmConfig) -> dict:
    d = asdict(cfg)
    if math.isinf(d["snr_db"]):
        d["snr_db"] = None  # JSON has no Infinity; null means noiseless
    return d


def config_from_json(d: dict) -> OfdmConfig:
    d = dict(d)
    if d.get("snr_db") is None:
        d["snr_db"] = math.inf
    return OfdmConfig(**d)


def write_iq(path, signal: IqBuffer, truth: Optional[OfdmConfig] = None) -> None:
    """Write samples as float32 I,Q pairs and the sidecar next to them."""
    path = Path(path)
    samples = signal.samples.astype("<c8")
    samples.view("<f4").tofile(path)
    meta = {
        "format_tag": FORMAT_TAG,
        "sample_rate_hz": signal.sample_rate_hz,
        "truth": None if truth is None else _config_to_json(truth),
    }
    with open(sidecar_path(path), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_iq(path) -> Tuple[IqBuffer, dict]:
    """Read an IQ file; returns the buffer and the sidecar metadata (or {})."""
    path = Path(path)
    raw = np.fromfile(path, dtype="<f4")
    if raw.size == 0:
        raise MalformedIqError(f"malformed IQ file (empty): {path}")
    if raw.size % 2:
        raise MalformedIqError(f"malformed IQ file (odd float count): {path}")
    samples = raw.view("<c8").astype(np.complex128)

    meta: dict = {}
    side = sidecar_path(path)
    if side.exists():
        try:
            meta = json.loads(side.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise MalformedIqError(f"unreadable sidecar {side}: {exc}") from exc
        tag = meta.get("format_tag")
        if tag != FORMAT_TAG:
            raise MalformedIqError(f"unsupported format_tag {tag!r} in {side}")
    rate = float(meta.get("sample_rate_hz", 1.0))
    try:
        buf = IqBuffer(samples, rate)
    except ValueError as exc:
        raise MalformedIqError(f"malformed IQ file {path}: {exc}") from exc
    return buf, meta
