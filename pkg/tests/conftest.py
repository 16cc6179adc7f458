import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semfact import corpus
from semfact.fincat import make_functor, small
from semfact.randomized import category_pool, random_functor

settings.register_profile(
    "semfact", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("semfact")

FUNCTOR_NAMES = ["id1", "d0", "d1", "s0", "bang_disc2"]
POOL = category_pool()


@pytest.fixture(scope="session")
def fun():
    """Corpus functors by name."""
    return {name: corpus.load(name) for name in FUNCTOR_NAMES}


def functors_st():
    return st.integers(0, 2**32 - 1).map(lambda s: random_functor(random.Random(s), POOL))


def small_categories_st():
    return st.sampled_from(POOL)


def z2_point():
    """1 → Z/2; its cokernel diagram has descent candidates failing both equations."""
    return make_functor(small.terminal(), small.cyclic_group(2), {"*": "*"})


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
