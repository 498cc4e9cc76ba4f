"""Reproducible random-number substreams.

All randomness in the package flows through numpy Generators.  A master
64-bit seed plus a tuple of integer/string keys (trial index, purpose tag)
identifies a substream, so independent trials can run in any order or in
parallel and still reproduce bit-for-bit.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key_to_int(key: int | str) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    return int(key)


def substream(seed: int, *keys: int | str) -> np.random.Generator:
    """Derive a Generator from a master seed and a path of keys.

    Distinct key paths give statistically independent streams; identical
    paths give identical streams.
    """
    entropy = [int(seed)] + [_key_to_int(k) for k in keys]
    return np.random.default_rng(entropy)
