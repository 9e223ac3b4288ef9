"""Shared fixture channels and cascades."""

from pathlib import Path

import numpy as np
import pytest

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.info.probability import ConditionalPmf, Pmf
from secrecy_toolkit.regions.cascade import AuxiliaryCascade, cascade_from_functions

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def bsc_table(p1: float, p2: float, pz: float) -> np.ndarray:
    """Binary input, three independent binary symmetric outputs."""
    table = np.zeros((2, 8))
    for x in range(2):
        for col in range(8):
            y1, y2, z = (col >> 2) & 1, (col >> 1) & 1, col & 1
            prob = 1.0
            for bit, flip in ((y1, p1), (y2, p2), (z, pz)):
                prob *= flip if bit != x else 1.0 - flip
            table[x, col] = prob
    return table


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def thm2_channel() -> BroadcastChannel:
    """Y2 = X, Y1 = floor(X/2), Z constant, |X| = 4."""
    return BroadcastChannel.from_functions([0, 0, 1, 1], [0, 1, 2, 3], [0, 0, 0, 0], 2, 4, 1)


@pytest.fixture
def thm3_channel() -> BroadcastChannel:
    """Y1 = X, Y2 = floor(X/2), Z constant, |X| = 4."""
    return BroadcastChannel.from_functions([0, 1, 2, 3], [0, 0, 1, 1], [0, 0, 0, 0], 4, 2, 1)


@pytest.fixture
def noiseless_channel() -> BroadcastChannel:
    """Y1 = Y2 = X on four symbols, Z constant."""
    return BroadcastChannel.from_functions([0, 1, 2, 3], [0, 1, 2, 3], [0, 0, 0, 0], 4, 4, 1)


@pytest.fixture
def binary_noiseless_channel() -> BroadcastChannel:
    return BroadcastChannel.from_functions([0, 1], [0, 1], [0, 0], 2, 2, 1)


@pytest.fixture
def bsc_channel() -> BroadcastChannel:
    return BroadcastChannel.from_table(bsc_table(0.1, 0.2, 0.3), 2, 2, 2)


@pytest.fixture
def weak_eavesdropper_channel() -> BroadcastChannel:
    """Y1 = Y2 = X on four symbols; Z is X through a 4-ary symmetric channel that is right half the time."""
    table = np.zeros((4, 4, 4, 4))
    for x in range(4):
        for z in range(4):
            table[x, x, x, z] = 0.5 if z == x else 0.5 / 3
    return BroadcastChannel.from_table(table.reshape(4, 64), 4, 4, 4)


@pytest.fixture
def transparent_channel() -> BroadcastChannel:
    """Everyone, eavesdropper included, sees X on four symbols."""
    identity = [0, 1, 2, 3]
    return BroadcastChannel.from_functions(identity, identity, identity, 4, 4, 4)


@pytest.fixture
def binary_cascade() -> AuxiliaryCascade:
    """V1 = V2 = X uniform on {0,1}; U and V constant."""
    return cascade_from_functions(
        Pmf.uniform(2),
        {"U": [0, 0], "V": [0, 0], "V1": [0, 1], "V2": [0, 1]},
        {"U": 1, "V": 1, "V1": 2, "V2": 2},
        label="binary",
    )


@pytest.fixture
def bits_cascade() -> AuxiliaryCascade:
    """U, V constant; V1, V2 independent uniform bits; X = 2*V1 + V2."""
    return AuxiliaryCascade(
        Pmf([1.0]),
        ConditionalPmf(np.ones((1, 1))),
        ConditionalPmf(np.full((1, 4), 0.25), out_shape=(2, 2)),
        ConditionalPmf(np.eye(4), in_shape=(2, 2)),
        label="bits",
    )


@pytest.fixture
def pad_cascade() -> AuxiliaryCascade:
    """U = V = V1 = V2 = X uniform on four symbols."""
    identity = [0, 1, 2, 3]
    return cascade_from_functions(
        Pmf.uniform(4),
        {"U": identity, "V": identity, "V1": identity, "V2": identity},
        {"U": 4, "V": 4, "V1": 4, "V2": 4},
        label="pad",
    )
