import random

import pytest

from u2factor.field import GF, rationals
from u2factor.sampling import random_sl


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def sample_sl():
    """Seeded sampler: sample_sl(field, n, count) -> list of SL_n matrices."""
    def go(field, n, count, seed=0):
        r = random.Random((seed, field.spec_string(), n, count).__repr__())
        return [random_sl(field, n, r) for _ in range(count)]
    return go


@pytest.fixture(scope="session")
def small_fields():
    return {q: GF(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13)}


@pytest.fixture(scope="session")
def Q():
    return rationals()
