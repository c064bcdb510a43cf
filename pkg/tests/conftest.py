import numpy as np
import pytest

from panelalloc import SystemConfig


@pytest.fixture(scope="session")
def baseline():
    """The default evaluation scenario: 8x32 array, 4 paths, K=10dB, SNR=10dB."""
    return SystemConfig()


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
