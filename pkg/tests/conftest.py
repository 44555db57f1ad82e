import math

import pytest

from ofdmblind import OfdmConfig, generate_ofdm


def make_config(**overrides) -> OfdmConfig:
    """The experiment baseline: 128 carriers, 1/4 CP, 20 symbols, noiseless."""
    kw = dict(
        carrier_count=128,
        cp_ratio=0.25,
        oversampling_rate=1,
        symbol_count=20,
        carrier_freq_hz=0.0,
        sample_rate_hz=40e6,
        snr_db=math.inf,
        seed=1,
    )
    kw.update(overrides)
    return OfdmConfig(**kw)


@pytest.fixture(scope="session")
def baseband_noiseless():
    cfg = make_config()
    signal, lengths = generate_ofdm(cfg)
    return cfg, signal, lengths


@pytest.fixture(scope="session")
def oversampled_noiseless():
    cfg = make_config(oversampling_rate=4)
    signal, lengths = generate_ofdm(cfg)
    return cfg, signal, lengths
