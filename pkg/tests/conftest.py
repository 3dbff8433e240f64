import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0DEC)


def random_stream(rng, p, count):
    import mv2codec as m

    digits = rng.integers(0, p, size=count, dtype=np.uint16)
    return m.PitStream(p, digits)


def random_block(rng, p, n, count):
    import mv2codec as m

    digits = rng.integers(0, p, size=count * n, dtype=np.uint16)
    return m.PaitBlock(p, n, digits)
