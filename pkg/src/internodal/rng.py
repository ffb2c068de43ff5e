"""Counter-based random streams.

The generator is Philox4x64-10 (Salmon et al., Random123). Stream ``(seed, index)``
is the sequence of blocks at counters ``(index, 0, 0, 0)``, ``(index, 1, 0, 0)``, ...
under key ``(seed, tag)``. Changing any of these conventions invalidates recorded
seeds.
"""

from __future__ import annotations

import numpy as np

from .kernels import TWO_M53, philox_block

MAX_SEED = 2**64 - 1
TAG_USER = 0x7573657253747265  # "userStre"


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


class CounterStream:
    """A single independent stream of uniforms in [0, 1).

    >>> s = CounterStream(seed=42, index=7)
    >>> 0.0 <= s.uniform() < 1.0
    True
    """

    def __init__(self, seed: int, index: int = 0, tag: int = TAG_USER):
        self.seed = check_seed(seed)
        self.index = int(index)
        self.tag = int(tag)
        self._block = 0
        self._buffer: list[float] = []

    def spawn(self, index: int) -> "CounterStream":
        return CounterStream(self.seed, index, self.tag)

    def next_raw(self) -> np.ndarray:
        words = philox_block((self.index, self._block, 0, 0), (self.seed, self.tag))[0]
        self._block += 1
        return words

    def uniform(self) -> float:
        if not self._buffer:
            words = self.next_raw()
            self._buffer = [float(w >> np.uint64(11)) * TWO_M53 for w in words][::-1]
        return self._buffer.pop()

    def uniforms(self, n: int) -> np.ndarray:
        return np.array([self.uniform() for _ in range(n)])
