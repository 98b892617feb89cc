"""SplitMix64 hashing, used wherever values must be reproducible from a seed and a point."""
from __future__ import annotations

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def hash_ints(*parts: int) -> int:
    h = 0
    for p in parts:
        h = splitmix64(h ^ (p & MASK))
    return h


def unit_float(*parts: int) -> float:
    """Deterministic float in [0, 1) from integer parts (53 high bits)."""
    return (hash_ints(*parts) >> 11) / float(1 << 53)
