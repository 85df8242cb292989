"""Random inputs shared by the test modules."""
from __future__ import annotations

import random

from tameshear.tame_sl2 import InjectionTable


def random_table(rng: random.Random, max_size: int, bound: int) -> InjectionTable:
    size = rng.randint(1, max_size)
    ns = rng.sample(range(1, bound + 1), size)
    ls = rng.sample(range(1, bound + 1), size)
    return InjectionTable(tuple(zip(ns, ls)))


def random_tables(seed: int, count: int, max_size: int, bound: int):
    rng = random.Random(seed)
    return [random_table(rng, max_size, bound) for _ in range(count)]
