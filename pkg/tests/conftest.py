import random

import pytest

from bdtk.arith import INF, Supernatural


@pytest.fixture
def S2():
    return Supernatural({2: INF})


@pytest.fixture
def S23():
    return Supernatural({2: INF, 3: 1})


@pytest.fixture
def S6():
    return Supernatural({2: INF, 3: INF})


@pytest.fixture
def rng():
    return random.Random(20240817)
