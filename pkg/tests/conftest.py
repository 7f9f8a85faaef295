import numpy as np
import pytest

from ductwave.gas import GasModel


@pytest.fixture(scope="session")
def air() -> GasModel:
    return GasModel()


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
