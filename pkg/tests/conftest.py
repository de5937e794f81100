import random

import pytest
from hypothesis import HealthCheck, settings

from cyclevca.feasibility import feasible
from cyclevca.instance import Chord, Instance, all_chords

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_feasible(n, p, rng, cap=None):
    """A feasible instance from the stdlib RNG; ``cap`` limits |S|."""
    chords = all_chords(n)
    while True:
        links = [c for c in chords if rng.random() < p]
        if cap is not None and len(links) > cap:
            links = rng.sample(links, cap)
        if feasible(n, links):
            return Instance(n, tuple(sorted(links)))


def C(a, b):
    return Chord(a, b)


# two components: blue covers 1..7 (border chord 1-7), red covers 7..10
BLUE = (C(1, 3), C(2, 5), C(3, 6), C(4, 7))
RED = (C(7, 9), C(8, 10))


@pytest.fixture
def rng():
    return random.Random(12345)
