import numpy as np


class Stage:
    autoencoder = 1
    shuffled = 2
    random = 3
    leiden = 4
    kmeans = 5


def derive_seed(master_seed: int, stage: int, *counters: int) -> int:
    """
    Seed for one pipeline stage, derived from the master seed.

    The value is the first 64-bit word of
    `SeedSequence(master_seed, spawn_key=(stage, *counters))`, so equal
    (master_seed, stage, counters) always give the same seed.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=(stage, *counters))
    return int(ss.generate_state(1, np.uint64)[0])
