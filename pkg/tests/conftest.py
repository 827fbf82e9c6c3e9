import random

import pytest

from goa import GroundSet, Partition, close_generators
from goa.subsets import mask_of


@pytest.fixture
def g3():
    return GroundSet(3)


@pytest.fixture
def example_partition(g3):
    """The six-block order-3 partition: {} | {1},{2} | {3} | {1,2} |
    {1,3},{2,3} | {1,2,3} (the orbit partition of the transposition (1,2))."""
    return Partition.from_blocks(g3, [
        [0],
        [mask_of([1]), mask_of([2])],
        [mask_of([3])],
        [mask_of([1, 2])],
        [mask_of([1, 3]), mask_of([2, 3])],
        [mask_of([1, 2, 3])],
    ])


def random_group(rng: random.Random, n: int, max_gens: int = 2):
    g = GroundSet(n)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        images = list(range(1, n + 1))
        rng.shuffle(images)
        gens.append(tuple(images))
    return close_generators(g, gens)
