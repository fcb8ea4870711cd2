"""Seeded random streams.

All randomness comes from numpy's PCG64 generator. Independent trials get
independent streams through ``derive_seed``: a splitmix64 fold of the master
seed with each index in turn,

    s_0 = master;  s_{j+1} = splitmix64(s_j XOR splitmix64(index_j))

so row (point i, trial j) of an experiment can be replayed from
``derive_seed(master, i, j)`` alone, on any platform.
"""

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, *indices: int) -> int:
    seed = master & MASK64
    for index in indices:
        seed = splitmix64(seed ^ splitmix64(index & MASK64))
    return seed


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))
