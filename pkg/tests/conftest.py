import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ninf.core import random_latin_square

settings.register_profile("ninf", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ninf")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("NINF_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_square(n, seed):
    return random_latin_square(n, np.random.default_rng(seed))
