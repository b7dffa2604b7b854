import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return random.Random(0x5eed)


# small odd squarefree radicands >= 3, handy for randomized sweeps
SMALL_RADICANDS = [3, 5, 7, 11, 13, 15, 17, 19, 21, 23, 29, 31, 33, 35, 37,
                   39, 41, 43, 47, 51, 53, 55, 57, 59]


@pytest.fixture
def small_radicands():
    return list(SMALL_RADICANDS)


def _runnable(limit):
    """Radicands the algorithm actually runs on (the eta products are only
    rational over F_r under the standing class-number hypothesis)."""
    from greenberg.quadratic import GATE_TRIVIAL, class_number, is_squarefree
    out = []
    for f in range(3, limit, 2):
        if not is_squarefree(f):
            continue
        if class_number(f).gate != GATE_TRIVIAL:
            out.append(f)
    return out


@pytest.fixture(scope="session")
def runnable_radicands():
    return _runnable(90)
