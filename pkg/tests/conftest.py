import random

import pytest

from lexmatch import GenSpec, Instance, generate


@pytest.fixture
def ref_instance():
    """4x2 ranked-isometric reference instance used across the suite."""
    return Instance.from_matrix([[100, 10], [99, 9], [20, 4], [19, 3]])


def random_sizes(seed, count, n_max, m_max, n_min=1):
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.randint(1, m_max)
        n = rng.randint(max(m, n_min), n_max)
        yield n, m, rng.randrange(10**6)


def random_instances(kind, seed, count, n_max, m_max, n_min=1, **kw):
    for n, m, s in random_sizes(seed, count, n_max, m_max, n_min=n_min):
        yield generate(GenSpec(kind=kind, n=n, m=m, seed=s, **kw))
