"""Deterministic counter-based random substreams.

Draw number n for seed s is a pure function of (s, n):

    key      = finalize(s)
    value(n) = finalize(key + n * GOLDEN)        (all arithmetic mod 2^64)

where finalize is the SplitMix64 finalizer (xor-shift / multiply diffusion,
the constants below) and GOLDEN is the 64-bit golden-ratio increment.  This
is SplitMix64 used as a stateless counter generator: period 2^64 positions
per seed, no sequential state, so any iteration's deviates can be produced
in any order, in any chunking, on any worker, bit-identically.  Passing the
seed through the finalizer first keys nearby integer seeds (42, 43, ...)
into unrelated counter ranges.

Everything is vectorized over numpy uint64; unsigned overflow wraps, which
is exactly the mod-2^64 arithmetic the scheme calls for.
"""

from __future__ import annotations

import numpy as np

from .core import DomainError

SEED_BOUND = 2**64

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_MULT2 = np.uint64(0x94D049BB133111EB)
_SH30 = np.uint64(30)
_SH27 = np.uint64(27)
_SH31 = np.uint64(31)
_SH11 = np.uint64(11)
_UNIT = 2.0**-53


def _finalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _SH30)) * _MULT1
    z = (z ^ (z >> _SH27)) * _MULT2
    return z ^ (z >> _SH31)


class CounterStream:
    """Addressable uniform deviates for one seed.

    Positions are non-negative integers below 2^64; callers own the position
    layout (which position feeds which model quantity).
    """

    __slots__ = ("seed", "_key")

    def __init__(self, seed: int):
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise DomainError(f"seed must be an integer, got {seed!r}")
        seed = int(seed)
        if not 0 <= seed < SEED_BOUND:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.seed = seed
        self._key = _finalize(np.asarray([seed], dtype=np.uint64))[0]

    def raw64(self, positions) -> np.ndarray:
        """The 64-bit outputs at the given positions (scalar or array)."""
        pos = np.atleast_1d(np.asarray(positions, dtype=np.uint64))
        return _finalize(self._key + pos * _GOLDEN)

    def unit(self, positions):
        """Uniform floats on [0, 1): the top 53 bits of each output."""
        out = (self.raw64(positions) >> _SH11) * _UNIT
        return float(out[0]) if np.ndim(positions) == 0 else out

    def signed(self, positions):
        """Uniform floats on [-1, 1)."""
        out = (self.raw64(positions) >> _SH11) * _UNIT * 2.0 - 1.0
        return float(out[0]) if np.ndim(positions) == 0 else out


def spawned_seed(seed: int, offset: int) -> int:
    """The offset-th companion seed, wrapped into the 64-bit seed space."""
    return (int(seed) + int(offset)) % SEED_BOUND
