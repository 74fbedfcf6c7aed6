# tests/conftest.py
import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
os.environ.setdefault("ORDKIT_QUIET", "1")

from order.poset import FinPoset  # noqa: E402

settings.register_profile("ordkit", derandomize=True, deadline=None, max_examples=40)
settings.register_profile("thorough", derandomize=True, deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ordkit"))


@pytest.fixture
def chain3():
    return FinPoset.chain(3)


@pytest.fixture
def diamond():
    # (0,0) < (0,1), (1,0) < (1,1)
    return FinPoset.product(FinPoset.chain(2), FinPoset.chain(2))


@pytest.fixture
def m3():
    return FinPoset.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"])


@pytest.fixture
def n5():
    return FinPoset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
