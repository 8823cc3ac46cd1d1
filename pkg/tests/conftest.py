import random

import pytest

from bvgroup.generators import FINITE_ALPHABET, GenWord


def random_word(rng: random.Random, lo: int = 1, hi: int = 10, alphabet=FINITE_ALPHABET) -> GenWord:
    return GenWord(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


@pytest.fixture
def rng():
    return random.Random(20261016)
