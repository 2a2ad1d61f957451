"""Portable, counter-based random number generation.

Every noise value in this package is derived from a 64-bit master seed plus
a tuple of integer indices (trial, contact, component, ...). The generator is
SplitMix64 (Steele/Lea/Flood; the public-domain constants below), chosen
because it is trivial to reimplement bit-exactly in any language. Platform
default generators are deliberately not used anywhere in the library, so two
implementations given the same seed produce the same simulation byte for byte.

Gaussians come from the Box-Muller transform applied to the SplitMix64
uniform stream (cosine branch only, one gaussian per substream).
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_TWO_POW_NEG53 = 2.0**-53
_TWO_PI = 2.0 * math.pi


def mix64(x: int) -> int:
    """SplitMix64 output scrambler: a bijection on 64-bit integers.

    Note mix64(0) == 0; index hashing below offsets inputs so the zero fixed
    point never collapses distinct index tuples.
    """
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *indices: int) -> int:
    """Hash integer indices into a master seed, yielding a substream seed.

    The chain is h = mix64(seed); h = mix64(h ^ mix64(index_i + 1)) for each
    index. The +1 offset keeps index 0 away from mix64's zero fixed point.
    """
    h = mix64(seed & _MASK64)
    for ix in indices:
        h = mix64(h ^ mix64((int(ix) + 1) & _MASK64))
    return h


class SplitMix64:
    """Sequential SplitMix64 stream over a given seed."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform double in [0, 1) using the top 53 bits."""
        return (self.next_u64() >> 11) * _TWO_POW_NEG53

    def next_gauss(self) -> float:
        """Standard normal via Box-Muller (cosine branch)."""
        u1 = self.next_float()
        u2 = self.next_float()
        if u1 == 0.0:
            u1 = _TWO_POW_NEG53
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)


class NoiseStream:
    """Family of independent gaussian substreams below a common prefix.

    ``NoiseStream(seed, phase, obj, trial).normal(contact, component)`` draws
    the one standard-normal value owned by that full index tuple. Each draw
    reseeds from the hashed indices, so the scheme is counter-based: values
    do not depend on call order, and disjoint prefixes never share state.
    """

    def __init__(self, seed: int, *prefix: int):
        self._seed = derive_seed(seed, *prefix) if prefix else mix64(seed & _MASK64)

    def normal(self, *indices: int) -> float:
        return SplitMix64(derive_seed(self._seed, *indices)).next_gauss()
