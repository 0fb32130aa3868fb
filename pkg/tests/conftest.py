import numpy as np
import pytest

from evoxel.engine import TickEngine
from evoxel.world import World


@pytest.fixture
def world():
    return World()


@pytest.fixture
def engine(world):
    return TickEngine(world)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
