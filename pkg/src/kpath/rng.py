"""Labelled, reproducible random streams.

Every randomized step draws from a stream identified by a master seed and a
label (a tuple of ints and short strings).  Two streams with the same seed and
label produce the same sequence no matter when or in which order they are
created, which is what makes trials schedule-independent.
"""

from __future__ import annotations

import zlib
from functools import cached_property

import numpy as np

DEFAULT_SEED = 0x5EED


def _label_word(part) -> int:
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError("stream labels must be non-negative")
        return int(part)
    return zlib.crc32(str(part).encode("utf-8"))


class RngStream:
    """A deterministic random stream keyed by ``(seed, label)``."""

    def __init__(self, seed: int = DEFAULT_SEED, label: tuple = ()):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.label = tuple(label)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, label={self.label!r})"

    @cached_property
    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=tuple(_label_word(p) for p in self.label))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, *label) -> "RngStream":
        """Return an independent stream whose label extends this one."""
        return RngStream(self.seed, self.label + label)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size=size)


def as_stream(rng) -> RngStream:
    """Accept a stream, an int seed or None (the default seed)."""
    if isinstance(rng, RngStream):
        return rng
    if rng is None:
        return RngStream(DEFAULT_SEED)
    return RngStream(int(rng))


def entropy_seed() -> int:
    return int(np.random.SeedSequence().entropy) & 0xFFFFFFFFFFFFFFFF
