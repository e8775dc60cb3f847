"""Deterministic derivation of independent random streams from one seed."""

import numpy as np

MASK64 = (1 << 64) - 1

#: Recorded in benchmark output headers so runs can be reproduced.
RNG_NAME = "splitmix64-pcg64"


def splitmix64(value: int) -> int:
    """One splitmix64 finalizer step; decorrelates nearby inputs."""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def stream_seed(seed: int, index: int) -> int:
    """Seed for stream `index`: mixes seed XOR index, so streams never
    shift when more of them are added."""
    return splitmix64((int(seed) ^ int(index)) & MASK64)


def stream_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(stream_seed(seed, index))
