import numpy as np
import pytest

from hypersym.brackets import BracketClass, EllipticParams

CLASSES = [BracketClass.rational(), BracketClass.trigonometric(), BracketClass.theta(0.2)]


@pytest.fixture(params=CLASSES, ids=lambda c: c.variant)
def bclass(request):
    return request.param


@pytest.fixture
def ep_theta():
    return EllipticParams(0.31 + 0.07j, BracketClass.theta(0.2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
