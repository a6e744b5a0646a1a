import numpy as np
import pytest

from qexpfam import cone
from qexpfam.linalg import Algebra


@pytest.fixture
def algebra():
    return cone.ALGEBRA


@pytest.fixture
def abelian3():
    return Algebra((1, 1, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture
def staffelberg():
    return cone.staffelberg_family()


@pytest.fixture
def swallow():
    return cone.swallow_family()
