import mpmath as mp
import numpy as np
import pytest
from hypothesis import strategies as st

from picgap.channel import ChannelParams

mp.mp.dps = 40

# exhaustive settings used by the gap tests
ACCEPT_POWERS = (10.0, 1e2, 1e3, 1e4)
ACCEPT_NOISES = ((1.0, 1.0, 1.0), (1.0, 4.0, 16.0), (1.0, 2.0, 4.0), (1.0, 10.0, 100.0))


def hlog(x) -> float:
    """High-precision 1/2 log2(x)."""
    return float(mp.log(mp.mpf(x)) / (2 * mp.log(2)))


def random_params(rng: np.random.Generator, high_snr: bool = True) -> ChannelParams:
    N = np.sort(np.exp(rng.uniform(np.log(0.1), np.log(50.0), 3)))
    lo = 3 * N[2] if high_snr else 0.0
    P = lo + float(np.exp(rng.uniform(np.log(1.0), np.log(1e5))))
    return ChannelParams(P, tuple(N))


def param_sets(count: int, seed: int, high_snr: bool = True) -> list[ChannelParams]:
    rng = np.random.default_rng(seed)
    return [random_params(rng, high_snr) for _ in range(count)]


@st.composite
def channel_params(draw, high_snr: bool = True):
    ns = sorted(draw(st.lists(st.floats(0.05, 100.0), min_size=3, max_size=3)))
    base = 3 * ns[2] if high_snr else 0.0
    P = base + draw(st.floats(0.0, 1e5))
    return ChannelParams(P, tuple(ns))


@pytest.fixture
def p100():
    return ChannelParams(100.0, (1.0, 4.0, 16.0))


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
