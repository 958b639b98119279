import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from trigal.curve import CurveSpec
from trigal.periods import trigonal_period_data
from trigal.sigma import build_sigma
from trigal.verify import CORPUS

settings.register_profile(
    "trigal", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("trigal")


class Corpus:
    """Curves of the default corpus with periods and sigma, built on demand."""

    def __init__(self):
        self._cache = {}

    def __call__(self, i):
        if i not in self._cache:
            curve = CurveSpec.from_branch_points(CORPUS[i])
            pd = trigonal_period_data(curve)
            self._cache[i] = (curve, pd, build_sigma(pd))
        return self._cache[i]


@pytest.fixture(scope="session")
def corpus():
    return Corpus()


@pytest.fixture(scope="session")
def real_curve(corpus):
    """b = (0, 1, 2, 3) with its period data and sigma context."""
    return corpus(0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
