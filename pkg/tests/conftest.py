import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rclink import Band, LcParallel, ReceiverParams, TLineShortedTapped

# reference operating point: ~3 GHz resonance, 10 MHz band, 300 K, 40 dB gain
LC_MODEL = LcParallel(4.7e-9, 6.0e-13)
TLINE_MODEL = TLineShortedTapped(50.0, 3.0e8, 75.0, 75.0 / 7, 8 * 75.0 / 13)
POWER_W = 2.68e-14
QA = 3.29e-18


@pytest.fixture(scope="session")
def lc_model():
    return LC_MODEL


@pytest.fixture(scope="session")
def tline_model():
    return TLINE_MODEL


@pytest.fixture(scope="session")
def lc_band():
    return Band(LC_MODEL.resonance, 1.0e7)


@pytest.fixture(scope="session")
def tline_band():
    import math

    return Band(2 * math.pi * 3.0e9, 1.0e7)


def make_receiver(load_resistance, temperature=300.0, amp_noise=QA):
    return ReceiverParams(load_resistance, 100.0, amp_noise, temperature)


@pytest.fixture(scope="session")
def receiver():
    return make_receiver(5.0e4)
