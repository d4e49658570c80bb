"""Seeded random streams.

Every randomized operation draws from its own Philox stream keyed by the
global seed plus a tuple of labels, so adding a new consumer never shifts
the numbers another one sees.
"""
from __future__ import annotations

import zlib

import numpy as np


def _key(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label)
    return zlib.crc32(str(label).encode())


def stream(seed: int, *labels) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(_key(x) for x in labels))
    return np.random.Generator(np.random.Philox(ss))
