"""Seeded random streams. Every randomized stage draws from its own named substream."""
import zlib

import numpy as np


def substream(seed: int, name: str) -> np.random.Generator:
    # crc32 is stable across runs and platforms, unlike hash()
    key = zlib.crc32(name.encode("utf-8"))
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(key,))
    return np.random.default_rng(ss)
