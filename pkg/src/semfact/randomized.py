"""Seeded random functors between small categories."""

import random

from .config import Budget
from .fincat import small
from .fincat.search import iter_functors


def category_pool():
    cats = [
        small.terminal(), small.poset(2), small.poset(3), small.discrete(2), small.discrete(3),
        small.cyclic_group(2), small.cyclic_group(3), small.idempotent_monoid(),
        small.parallel_pair(), small.walking_iso(), small.span(), small.cospan(),
        small.arrow_plus_point(), small.split_idempotent(),
    ]
    return [c for c in cats if len(c.objects) <= 3 and len(c.morphisms) <= 8]


def random_functor(rng: random.Random, pool=None, limit=10**5):
    """A functor drawn uniformly from Fun(e, b) for random e, b in the pool."""
    pool = pool or category_pool()
    while True:
        e, b = rng.choice(pool), rng.choice(pool)
        functors = list(iter_functors(e, b, budget=Budget("random_functor", limit)))
        if functors:
            return rng.choice(functors)


def random_functors(seed, n, pool=None):
    rng = random.Random(seed)
    pool = pool or category_pool()
    return [random_functor(rng, pool) for _ in range(n)]
