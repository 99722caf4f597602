"""Deterministic sub-stream derivation from a master seed.

Experiments key their randomness by (master seed, experiment name, point
indices) so that resizing a grid or adding sweep points never perturbs the
draws of existing cells.  Keys are folded into a 64-bit state with splitmix64;
string keys are first reduced to 64 bits via SHA-256 so the mapping does not
depend on PYTHONHASHSEED.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _key_to_int(key: int | float | str) -> int:
    if isinstance(key, (str, float)):
        text = repr(key) if isinstance(key, float) else key
        return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "little")
    return key & _MASK


def mix_seed(master_seed: int, *keys: int | float | str) -> int:
    """Fold keys into the master seed, returning a derived 64-bit seed."""
    state = master_seed & _MASK
    for key in keys:
        state = _splitmix64(state ^ _key_to_int(key))
    return state


def substream(master_seed: int, *keys: int | float | str) -> np.random.Generator:
    """Independent generator for the sub-stream named by ``keys``."""
    return np.random.default_rng(mix_seed(master_seed, *keys))
