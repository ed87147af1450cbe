"""Deterministic per-index random streams (splitmix64).

Every draw is a pure function of (seed, index), so batch drivers can shard
work across threads without any shared stream state and still produce
bit-identical output.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

DYADIC_BITS = 53  # default sampling grid j / 2^53
DYADIC_G = 1 << DYADIC_BITS


def mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _M1) & _MASK64
    z = ((z ^ (z >> 27)) * _M2) & _MASK64
    return z ^ (z >> 31)


def uniform_u64(seed: int, index: int) -> int:
    """Element `index` of the splitmix64 stream started at `seed`."""
    return mix64((seed + (index + 1) * _GAMMA) & _MASK64)


def prng_uniform_rational(seed: int, index: int, grid_denominator: int = DYADIC_G) -> Fraction:
    """Exact rational j/G with j uniform on {0, ..., G-1}.

    Power-of-two G uses the top bits directly; general G uses rejection
    sampling on the same deterministic stream.
    """
    g = grid_denominator
    if g < 2:
        raise ValueError("grid denominator must be >= 2")
    u = uniform_u64(seed, index)
    if g & (g - 1) == 0:
        j = u >> (64 - g.bit_length() + 1)
    else:
        threshold = (1 << 64) - ((1 << 64) % g)
        while u >= threshold:
            u = mix64(u)
        j = u % g
    return Fraction(j, g)


def uniform_u64_array(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized uniform_u64 for indices start..start+count-1 (bit-identical)."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + idx * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        return z ^ (z >> np.uint64(31))


def uniform_dyadic_floats(seed: int, start: int, count: int) -> np.ndarray:
    """Floats j/2^53 (each exactly representable) for indices start..start+count-1."""
    u = uniform_u64_array(seed, start, count)
    return (u >> np.uint64(64 - DYADIC_BITS)).astype(np.float64) * 2.0**-DYADIC_BITS


def uniform_dyadic_matrix(seed: int, samples: int, dim: int, start: int = 0) -> np.ndarray:
    """(samples, dim) matrix of dyadic uniforms; row i uses indices i*dim .. i*dim+dim-1."""
    return uniform_dyadic_floats(seed, start, samples * dim).reshape(samples, dim)
