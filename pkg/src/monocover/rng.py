"""Counter-based deterministic random numbers ("splitmix64-counter", version 1).

Every draw is a pure function of (seed, counter), so results are identical
across runs, platforms and any parallel execution order.  The raw stream is
the SplitMix64 sequence: the value at counter i is the SplitMix64 finalizer
applied to seed + (i + 1) * GAMMA (mod 2**64).

Experiment outputs embed GENERATOR_NAME and GENERATOR_VERSION so archived
results stay attributable to the exact stream definition.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "splitmix64-counter"
GENERATOR_VERSION = 1

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
# Distinct odd constant used only for seed derivation, for domain separation
# from the raw value stream.
_GAMMA2 = 0xD1B54A32D192ED03


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def value_u64(seed: int, counter: int) -> int:
    """The 64-bit value of the (seed) stream at position ``counter``."""
    return mix64((seed + (counter + 1) * _GAMMA) & _MASK)


def values_u64(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized ``value_u64`` for counters start .. start+count-1.

    Bit-identical to the scalar path.  All arithmetic stays in uint64; mixing
    a Python int into a uint64 array would silently promote to float64.
    """
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = (np.uint64(seed & _MASK) + idx * np.uint64(_GAMMA)).astype(np.uint64)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


def derive_seed(seed: int, *path: int) -> int:
    """Derive a sub-stream seed from a path of integers.

    Hierarchical: derive_seed(s, a, b) == derive_seed(derive_seed(s, a), b).
    """
    s = seed & _MASK
    for tag in path:
        s = mix64(s ^ mix64(((tag + 1) * _GAMMA2) & _MASK))
    return s


def threshold_u64(p: float) -> int:
    """Inclusion threshold for probability p: draw < threshold <=> success.

    p = 0 maps to 0 (never) and p = 1 to 2**64 (always); interior values are
    truncated, which is exact enough for experiments and fully deterministic.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    return min(1 << 64, int(p * (1 << 64)))
